#include <gtest/gtest.h>

#include <numeric>

#include "cusp/padic.hpp"

using namespace cusp;

namespace {

RatFunc from_q_coeffs(std::vector<long long> num, long long den = 1) {
    return RatFunc(IntPoly(num).inflate(2), IntPoly::constant(den));
}

const InnerForm& form_named(const std::vector<InnerForm>& forms, const std::string& name) {
    for (const auto& f : forms)
        if (f.name == name) return f;
    throw std::out_of_range(name);
}

bool divides(const RatFunc& d, const IntPoly& order_q) {
    RatFunc r = RatFunc(order_q.inflate(2)) / d;
    return r.is_polynomial();
}

}  // namespace

TEST(InnerForms, CountsMatchCoinvariants) {
    for (int n = 1; n <= 8; ++n) {
        auto forms = enumerate_inner_forms(UnramifiedGroup::make({'A', n}, 1, "adjoint"));
        ASSERT_EQ(forms.size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(forms[0].name, "1");
        for (int j = 1; j <= n; ++j) {
            EXPECT_EQ(forms[static_cast<std::size_t>(j)].name, "w" + std::to_string(j));
            EXPECT_EQ(forms[static_cast<std::size_t>(j)].transitive, std::gcd(j, n + 1) == 1);
        }
    }
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'A', 4}, 2, "adjoint")).size(), 1u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'A', 5}, 2, "adjoint")).size(), 2u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'C', 3}, 1, "sc")).size(), 2u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'D', 6}, 1, "adjoint")).size(), 4u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'E', 6}, 1, "adjoint")).size(), 3u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'E', 8}, 1, "adjoint")).size(), 1u);
    EXPECT_EQ(enumerate_inner_forms(UnramifiedGroup::make({'D', 4}, 3, "adjoint")).size(), 1u);
}

TEST(InnerForms, RepresentativeIsThetaFixedWhenPossible) {
    auto G = UnramifiedGroup::make({'A', 5}, 2, "adjoint");
    for (const auto& f : enumerate_inner_forms(G)) EXPECT_EQ(G.omega_ad().apply_theta(f.omega), f.omega) << f.name;
}

TEST(FiniteGroups, OrdersAtSmallRank) {
    EXPECT_EQ(finite_group_order({'A', 1}, 1), IntPoly({0, -1, 0, 1}));
    IntPoly q = IntPoly::monomial(1, 1);
    auto p = [&](long long k, long long e) { return IntPoly::monomial(1, static_cast<std::size_t>(k)) - IntPoly::constant(e); };
    EXPECT_EQ(finite_group_order({'A', 2}, 2), q.pow(3) * p(2, 1) * p(3, -1));
    EXPECT_EQ(finite_group_order({'B', 2}, 1), q.pow(4) * p(2, 1) * p(4, 1));
    EXPECT_EQ(finite_group_order({'G', 2}, 1), q.pow(6) * p(2, 1) * p(6, 1));
    EXPECT_EQ(finite_group_order({'D', 4}, 3), q.pow(12) * p(2, 1) * p(6, 1) * (p(8, -1) + IntPoly::monomial(1, 4)));
    EXPECT_EQ(finite_group_order({'E', 6}, 2).degree(), 36 + 42);
}

TEST(CuspidalUnipotent, ExistenceRules) {
    auto count = [](CartanType t, int tw) { return cuspidal_unipotent_data(t, tw).entries.size(); };
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(count({'A', n}, 1), 0u);
    for (int n = 2; n <= 14; ++n) EXPECT_EQ(count({'A', n}, 2), (n == 2 || n == 5 || n == 9 || n == 14) ? 1u : 0u) << n;
    for (int n = 2; n <= 12; ++n) EXPECT_EQ(count({'C', n}, 1), (n == 2 || n == 6 || n == 12) ? 1u : 0u) << n;
    for (int n = 4; n <= 16; ++n) EXPECT_EQ(count({'D', n}, 1), (n == 4 || n == 16) ? 1u : 0u) << n;
    for (int n = 4; n <= 16; ++n) EXPECT_EQ(count({'D', n}, 2), n == 9 ? 1u : 0u) << n;
    EXPECT_EQ(count({'D', 4}, 3), 2u);
    EXPECT_EQ(count({'E', 6}, 1), 2u);
    EXPECT_EQ(count({'E', 6}, 2), 3u);
    EXPECT_EQ(count({'E', 7}, 1), 2u);
    EXPECT_EQ(count({'E', 8}, 1), 13u);
    EXPECT_EQ(count({'F', 4}, 1), 7u);
    EXPECT_EQ(count({'G', 2}, 1), 4u);
}

TEST(CuspidalUnipotent, KnownDegrees) {
    // theta_10 of Sp4, the cuspidal unipotent of U3 and of SO8+.
    EXPECT_EQ(*cuspidal_unipotent_data({'C', 2}, 1).entries[0].degree, from_q_coeffs({0, 1, -2, 1}, 2));
    EXPECT_EQ(*cuspidal_unipotent_data({'A', 2}, 2).entries[0].degree, from_q_coeffs({0, -1, 1}));
    IntPoly q1 = IntPoly({-1, 1});
    RatFunc d4 = RatFunc((IntPoly::monomial(1, 3) * q1.pow(4) * IntPoly({1, 1, 1})).inflate(2), IntPoly::constant(2));
    EXPECT_EQ(*cuspidal_unipotent_data({'D', 4}, 1).entries[0].degree, d4);
    // Field extension substitutes q^k.
    EXPECT_EQ(*cuspidal_unipotent_data({'C', 2}, 1, 2).entries[0].degree,
              cuspidal_unipotent_data({'C', 2}, 1).entries[0].degree->inflate(2));
}

TEST(CuspidalUnipotent, DegreesDivideGroupOrder) {
    std::vector<std::pair<CartanType, int>> types = {{{'A', 2}, 2}, {{'A', 5}, 2}, {{'A', 9}, 2}, {{'B', 2}, 1}, {{'C', 6}, 1},
                                                     {{'B', 6}, 1}, {{'D', 4}, 1}, {{'D', 9}, 2}, {{'G', 2}, 1}};
    for (auto [t, tw] : types)
        for (const auto& e : cuspidal_unipotent_data(t, tw).entries) {
            ASSERT_TRUE(e.degree.has_value()) << e.id;
            EXPECT_TRUE(divides(*e.degree, finite_group_order(t, tw))) << e.id;
            EXPECT_GT(e.degree->eval(3.0), 0.0) << e.id;
            // Integral at every prime power tried.
            for (double qv : {2.0, 3.0, 4.0, 5.0, 7.0}) {
                double v = e.degree->eval(std::sqrt(qv));
                EXPECT_NEAR(v, std::round(v), 1e-6 * std::max(1.0, std::abs(v))) << e.id << " q=" << qv;
            }
        }
}

TEST(CuspidalUnipotent, DegreeClassesHaveTotientSize) {
    for (auto [t, tw] : std::vector<std::pair<CartanType, int>>{{{'E', 8}, 1}, {{'F', 4}, 1}, {{'G', 2}, 1}, {{'E', 6}, 2}, {{'E', 7}, 1}})
        for (const auto& cls : degree_classes(cuspidal_unipotent_data(t, tw))) {
            ASSERT_EQ(cls[0].ns_candidates.size(), 1u);
            int n = cls[0].ns_candidates[0];
            int phi = 0;
            for (int k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
            EXPECT_EQ(static_cast<int>(cls.size()), phi) << cls[0].degree_class;
        }
}

TEST(ParahoricSupports, HyperspecialVolumeOfSL2) {
    auto G = UnramifiedGroup::make({'A', 1}, 1, "sc");
    auto forms = enumerate_inner_forms(G);
    FiniteQuotient fq = finite_quotient(G, forms[0].frobenius, {1});
    EXPECT_EQ(fq.dimension, 3);
    EXPECT_EQ(parahoric_volume(fq), RatFunc::t_power(-3) * from_q_coeffs({0, -1, 0, 1}));
    EXPECT_TRUE(enumerate_parahoric_supports(G, forms[0]).empty());
}

TEST(ParahoricSupports, AnisotropicTorusOfDivisionAlgebra) {
    auto G = UnramifiedGroup::make({'A', 1}, 1, "adjoint");
    auto forms = enumerate_inner_forms(G);
    auto pcs = enumerate_parahoric_supports(G, form_named(forms, "w1"));
    ASSERT_EQ(pcs.size(), 1u);
    EXPECT_TRUE(pcs[0].J.empty());
    EXPECT_EQ(pcs[0].quotient.torus_order, IntPoly({1, 1}));
    EXPECT_EQ(parahoric_volume(pcs[0].quotient), RatFunc::t_power(-1) * from_q_coeffs({1, 1}));
    EXPECT_EQ(pcs[0].stabilizer.size(), 2u);
    FDeg f = formal_degree(pcs[0], pcs[0].cuspidal.entries[0]);
    EXPECT_EQ(f.value, RatFunc::t() / (RatFunc(2) * from_q_coeffs({1, 1})));
    EXPECT_EQ(f.value, f.normalizer_form);
}

TEST(ParahoricSupports, SupportsAreFrobeniusStableAndMaximal) {
    std::vector<std::pair<CartanType, int>> types = {{{'A', 5}, 1}, {{'A', 5}, 2}, {{'C', 6}, 1}, {{'B', 6}, 1}, {{'D', 8}, 1},
                                                     {{'D', 9}, 2}, {{'E', 6}, 1}, {{'E', 7}, 1}, {{'G', 2}, 1}};
    for (auto [t, tw] : types)
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(t, tw)) {
            auto G = UnramifiedGroup::make(t, tw, iso);
            for (const auto& form : enumerate_inner_forms(G))
                for (const auto& pc : enumerate_parahoric_supports(G, form)) {
                    std::vector<int> image;
                    for (int i : pc.J) image.push_back(form.frobenius[static_cast<std::size_t>(i)]);
                    std::sort(image.begin(), image.end());
                    EXPECT_EQ(image, pc.J);
                    EXPECT_EQ(pc.J.size() + pc.orbit.size(), static_cast<std::size_t>(G.node_count()));
                    EXPECT_GE(pc.g_prime, 1);
                    EXPECT_EQ(pc.association.size() % static_cast<std::size_t>(pc.g_prime), 0u);
                    EXPECT_TRUE(is_subset(pc.stabilizer, pc.stabilizer_ad));
                    EXPECT_EQ(pc.quotient.dimension - G.semisimple_rank(),
                              2 * static_cast<int>(std::accumulate(pc.quotient.factors.begin(), pc.quotient.factors.end(), 0LL,
                                                                   [](long long s, const FiniteFactor& f) {
                                                                       return s + positive_root_count(f.type) * f.field_degree;
                                                                   })));
                }
        }
}

TEST(ParahoricSupports, IsogenyChangesOnlyStabilizer) {
    for (auto [t, tw] : std::vector<std::pair<CartanType, int>>{{{'C', 6}, 1}, {{'A', 5}, 2}, {{'D', 8}, 1}, {{'E', 6}, 1}}) {
        auto Gad = UnramifiedGroup::make(t, tw, "adjoint");
        auto fad = enumerate_inner_forms(Gad);
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(t, tw)) {
            auto G = UnramifiedGroup::make(t, tw, iso);
            auto forms = enumerate_inner_forms(G);
            ASSERT_EQ(forms.size(), fad.size());
            for (std::size_t k = 0; k < forms.size(); ++k) {
                auto a = enumerate_parahoric_supports(G, forms[k]);
                auto b = enumerate_parahoric_supports(Gad, fad[k]);
                ASSERT_EQ(a.size(), b.size());
                for (std::size_t i = 0; i < a.size(); ++i) {
                    EXPECT_EQ(a[i].J, b[i].J);
                    for (const auto& e : a[i].cuspidal.entries) {
                        if (!e.degree) continue;
                        RatFunc ratio = formal_degree(a[i], e).value / formal_degree(b[i], e).value;
                        EXPECT_EQ(ratio, RatFunc(static_cast<long long>(b[i].stabilizer.size())) /
                                             RatFunc(static_cast<long long>(a[i].stabilizer.size())));
                    }
                }
            }
        }
    }
}

TEST(ParahoricSupports, ExceptionalShapes) {
    auto E7 = UnramifiedGroup::make({'E', 7}, 1, "adjoint");
    auto forms = enumerate_inner_forms(E7);
    auto pcs = enumerate_parahoric_supports(E7, form_named(forms, "w7"));
    auto it = std::find_if(pcs.begin(), pcs.end(), [](const ParahoricClass& pc) { return pc.orbit == std::vector<int>{0, 7}; });
    ASSERT_NE(it, pcs.end());
    EXPECT_EQ(it->quotient.str(), "2E6 x T1");
    EXPECT_EQ(it->stabilizer.size(), 2u);
    EXPECT_EQ(it->g_prime, 1);

    auto E6 = UnramifiedGroup::make({'E', 6}, 1, "adjoint");
    for (const auto& f : enumerate_inner_forms(E6)) {
        if (f.quasi_split) continue;
        auto ps = enumerate_parahoric_supports(E6, f);
        ASSERT_EQ(ps.size(), 1u);
        EXPECT_EQ(ps[0].quotient.factors[0].str(), "3D4");
        EXPECT_EQ(ps[0].cuspidal.entries.size(), 2u);
    }

    auto G2 = UnramifiedGroup::make({'G', 2}, 1, "adjoint");
    auto g2 = enumerate_parahoric_supports(G2, enumerate_inner_forms(G2)[0]);
    ASSERT_EQ(g2.size(), 1u);
    EXPECT_EQ(g2[0].J, (std::vector<int>{1, 2}));
    // Formal degree is dim sigma over the hyperspecial volume.
    FDeg f = formal_degree(g2[0], g2[0].cuspidal.entries[0]);
    EXPECT_EQ(f.value * f.volume, f.dim_sigma);
}
