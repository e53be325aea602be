#include <complex>

#include <gtest/gtest.h>

#include "cusp/weilres.hpp"

using namespace cusp;

namespace {

std::complex<double> root_of_unity(long long order, long long exponent) {
    return std::polar(1.0, 2 * std::acos(-1.0) * static_cast<double>(exponent) / static_cast<double>(order));
}

// L(s) of a string list evaluated directly at residue cardinality q.
std::complex<double> l_numeric(const std::vector<std::pair<std::complex<double>, int>>& eigen, double s, double q) {
    std::complex<double> L = 1.0;
    for (const auto& [alpha, h] : eigen) L *= 1.0 / (1.0 - alpha * std::pow(q, -(s + h / 2.0)));
    return L;
}

// Weight multisets of every dual parameter whose adjoint decomposition is available.
std::vector<std::vector<WeightString>> shipped_multisets() {
    std::vector<std::vector<WeightString>> out;
    for (auto [type, outer] : catalogue_types(8)) {
        auto D = dual_affine_diagram(type, outer);
        for (int node = 0; node < static_cast<int>(D.labels.size()); ++node) {
            try {
                out.push_back(adjoint_weights(D, node));
            } catch (const Unavailable&) {
            }
        }
    }
    return out;
}

bool has_pole_at_zero(const std::vector<WeightString>& w) {
    return std::any_of(w.begin(), w.end(), [](const WeightString& x) { return x.order == 1 && x.h == 0; });
}

}  // namespace

TEST(RestrictSpec, DegreeOneIsIdentity) {
    auto H = UnramifiedGroup::make({'E', 6}, 2, "sc");
    auto sr = restrict_spec(H, 1);
    EXPECT_EQ(sr.restricted.theta(), H.theta());
    EXPECT_EQ(sr.restricted.omega_ad(), H.omega_ad());
    EXPECT_EQ(sr.frobenius_order, 2);
}

TEST(RestrictSpec, TrialityOverQuadraticExtension) {
    auto sr = restrict_spec(UnramifiedGroup::make({'D', 4}, 3, "adjoint"), 2);
    EXPECT_EQ(sr.restricted.factor_count(), 2);
    EXPECT_EQ(sr.restricted.node_count(), 10);
    // Independent count: two factor swaps return with a 3-cycle on the outer nodes.
    const Perm& th = sr.restricted.theta();
    long long order = 1;
    Perm p = th;
    while (p != identity_perm(10)) {
        p = compose(th, p);
        ++order;
    }
    EXPECT_EQ(order, 6);
    EXPECT_EQ(sr.frobenius_order, 6);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(sr.restricted.factor_of(th[static_cast<std::size_t>(i)]), 1);
}

TEST(RestrictSpec, SplitA1CubedIsThreeCycle) {
    auto sr = restrict_spec(UnramifiedGroup::make({'A', 1}, 1, "adjoint"), 3);
    EXPECT_EQ(sr.restricted.theta(), (Perm{2, 3, 4, 5, 0, 1}));
    EXPECT_EQ(sr.frobenius_order, 3);
    EXPECT_EQ(sr.residue_relation(), RatFunc::t_power(6));
}

TEST(TransportCounts, TrialityRowsAreIdentical) {
    auto rep = transport_counts(restrict_spec(UnramifiedGroup::make({'D', 4}, 3, "adjoint"), 2));
    EXPECT_TRUE(rep.ok());
    ASSERT_EQ(rep.rows.size(), 2u);
    for (const auto& r : rep.rows) {
        EXPECT_TRUE(same_counts(r.base_inv, r.restricted_inv));
        EXPECT_EQ(r.restricted_inv.a, 1);
        EXPECT_EQ(r.restricted_inv.b, 1);
    }
}

TEST(TransportCounts, DegreeOneIsTriviallyEqual) {
    auto H = UnramifiedGroup::make({'C', 3}, 1, "sc");
    auto rep = transport_counts(restrict_spec(H, 1));
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.rows.size(), group_reports(H, "*", -1).size());
}

TEST(TransportCounts, AnisotropicPgl2FormalDegreeInQSquared) {
    auto H = UnramifiedGroup::make({'A', 1}, 1, "adjoint");
    auto sr = restrict_spec(H, 2);
    auto rep = transport_counts(sr);
    EXPECT_TRUE(rep.ok());
    const InnerForm* aniso = nullptr;
    auto forms = enumerate_inner_forms(sr.restricted);
    for (const auto& f : forms)
        if (!f.quasi_split) aniso = &f;
    ASSERT_NE(aniso, nullptr);
    auto pcs = enumerate_parahoric_supports(sr.restricted, *aniso);
    ASSERT_EQ(pcs.size(), 1u);
    auto fd = formal_degree(pcs[0], pcs[0].cuspidal.entries[0]);
    auto base_pcs = enumerate_parahoric_supports(H, enumerate_inner_forms(H)[1]);
    auto base_fd = formal_degree(base_pcs[0], base_pcs[0].cuspidal.entries[0]);
    EXPECT_EQ(fd.value, base_fd.value.inflate(2));
    // Base value at q_L = 9 against the restricted value at q = 3.
    EXPECT_NEAR(fd.value.eval(std::sqrt(3.0)), base_fd.value.eval(3.0), 1e-12);
}

TEST(TransportCounts, EverySimpleTypeUpToRankSix) {
    std::size_t rows = 0;
    for (auto [type, outer] : catalogue_types(6))
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(type, outer))
            for (int d = 1; d <= 3; ++d) {
                auto rep = transport_counts(restrict_spec(UnramifiedGroup::make(type, outer, iso), d));
                EXPECT_TRUE(rep.ok()) << type.str() << " " << outer << " " << iso << " " << d;
                rows += rep.rows.size();
            }
    EXPECT_GT(rows, 400u);
}

TEST(Induction, CyclotomicFactorization) {
    for (int d = 1; d <= 4; ++d) {
        auto ind = induce_weights({{1, 0, 0}}, d);
        EXPECT_EQ(static_cast<int>(ind.size()), d);
        auto f = local_factors(ind, 1, 0);
        // s = 1/2: (1 - q^{-d/2})^{-1} = t^d / (t^d - 1).
        RatFunc expected = RatFunc::t_power(d) / (RatFunc::t_power(d) - RatFunc(1));
        EXPECT_EQ(f.L_s, expected) << d;
    }
}

TEST(Induction, InducedEigenvaluesAreDthRoots) {
    auto ind = induce_weights({{3, 1, 2}}, 4);
    ASSERT_EQ(ind.size(), 4u);
    for (const auto& x : ind) {
        auto a = std::pow(root_of_unity(x.order, x.exponent), 4);
        EXPECT_NEAR(std::abs(a - root_of_unity(3, 1)), 0.0, 1e-12);
        EXPECT_EQ(x.h, 2);
    }
}

TEST(LocalFactorTransport, ShippedMultisetsUpToDegreeFour) {
    auto all = shipped_multisets();
    ASSERT_GT(all.size(), 20u);
    for (const auto& w : all)
        for (int d = 1; d <= 4; ++d)
            for (int ord_psi : {-1, 0, 1, 2})
                for (int s2 : {0, 1}) {
                    if (s2 == 0 && has_pole_at_zero(w)) continue;
                    auto r = transport_local_factors(w, d, ord_psi, s2);
                    EXPECT_TRUE(r.L_inductive);
                    EXPECT_TRUE(r.eps_relation);
                    EXPECT_TRUE(r.gamma_abs_equal);
                    if (ord_psi % 2 == 0) EXPECT_EQ(r.expected_sign, 1);
                }
}

TEST(LocalFactorTransport, LMatchesDirectEvaluation) {
    std::vector<WeightString> w{{1, 0, 2}, {3, 1, 0}, {3, 2, 0}, {4, 1, 4}, {4, 3, 4}};
    for (int d = 2; d <= 4; ++d) {
        auto r = transport_local_factors(w, d, 0, 1);
        std::vector<std::pair<std::complex<double>, int>> base, ind;
        for (const auto& x : w) {
            auto alpha = root_of_unity(x.order, x.exponent);
            base.push_back({alpha, x.h});
            // All d-th roots of alpha.
            for (int i = 0; i < d; ++i)
                ind.push_back({std::polar(1.0, std::arg(alpha) / d + 2 * std::acos(-1.0) * i / d), x.h});
        }
        for (double q : {2.0, 3.0, 5.0}) {
            auto lb = l_numeric(base, 0.5, std::pow(q, d));
            auto li = l_numeric(ind, 0.5, q);
            EXPECT_NEAR(std::abs(lb - li), 0.0, 1e-9 * std::abs(lb));
            EXPECT_NEAR(r.induced.L_s.eval(std::sqrt(q)), li.real(), 1e-9 * std::abs(li));
        }
    }
}

TEST(LocalFactorTransport, EpsilonSignFollowsParity) {
    // dim 3, d = 2, odd ord_psi: sign -1; even ord_psi: exact equality.
    std::vector<WeightString> w{{1, 0, 2}};
    auto odd = transport_local_factors(w, 2, 1);
    EXPECT_EQ(odd.expected_sign, -1);
    EXPECT_TRUE(odd.eps_relation);
    EXPECT_EQ(odd.induced.eps, RatFunc(-1) * odd.base.eps.inflate(2));
    auto even = transport_local_factors(w, 2, 2);
    EXPECT_EQ(even.expected_sign, 1);
    EXPECT_EQ(even.induced.eps, even.base.eps.inflate(2));
    auto three = transport_local_factors(w, 3, 1);
    EXPECT_EQ(three.expected_sign, 1);
    EXPECT_EQ(three.induced.eps, three.base.eps.inflate(3));
}

TEST(LocalFactorTransport, DimensionZeroVirtualIsExact) {
    // Quotient of two representations of equal dimension: the epsilon ratio is inductive for every ord_psi.
    std::vector<WeightString> a{{1, 0, 2}}, b{{1, 0, 0}, {2, 1, 0}, {1, 0, 0}};
    for (int d = 1; d <= 4; ++d)
        for (int ord_psi : {-1, 0, 1, 3}) {
            auto ra = transport_local_factors(a, d, ord_psi, 1), rb = transport_local_factors(b, d, ord_psi, 1);
            EXPECT_EQ(ra.induced.eps / rb.induced.eps, (ra.base.eps / rb.base.eps).inflate(static_cast<std::size_t>(d)));
        }
}

TEST(LocalFactorTransport, ScaledGammaRelationNeedsTrivialConductorOfPsi) {
    auto w = adjoint_weights(dual_affine_diagram({'A', 2}, 1), 0);
    EXPECT_TRUE(transport_local_factors(w, 2, 0).gamma_abs_scaled);
    EXPECT_FALSE(transport_local_factors(w, 2, -1).gamma_abs_scaled);
}

TEST(LocalFactorTransport, RamifiedIsRejected) {
    EXPECT_THROW(transport_local_factors({{1, 0, 2}}, 2, 0, 0, 2), Unavailable);
}
