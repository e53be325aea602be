#include <gtest/gtest.h>

#include "cusp/rootdata.hpp"

using namespace cusp;

namespace {

std::vector<std::pair<CartanType, int>> all_types(int max_rank) {
    std::vector<std::pair<CartanType, int>> out;
    for (int n = 1; n <= max_rank; ++n) out.push_back({{'A', n}, 1});
    for (int n = 2; n <= max_rank; ++n) out.push_back({{'A', n}, 2});
    for (int n = 2; n <= max_rank; ++n) out.push_back({{'B', n}, 1});
    for (int n = 2; n <= max_rank; ++n) out.push_back({{'C', n}, 1});
    for (int n = 4; n <= max_rank; ++n) out.push_back({{'D', n}, 1});
    for (int n = 4; n <= max_rank; ++n) out.push_back({{'D', n}, 2});
    out.push_back({{'D', 4}, 3});
    for (int n = 6; n <= 8; ++n) out.push_back({{'E', n}, 1});
    out.push_back({{'E', 6}, 2});
    out.push_back({{'F', 4}, 1});
    out.push_back({{'G', 2}, 1});
    return out;
}

bool is_affine_automorphism(const UnramifiedGroup& G, const Perm& p) {
    for (int i = 0; i < G.node_count(); ++i) {
        if (G.marks()[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] != G.marks()[static_cast<std::size_t>(i)]) return false;
        for (int j = 0; j < G.node_count(); ++j)
            if (G.cartan()(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]) != G.cartan()(i, j)) return false;
    }
    return true;
}

}  // namespace

TEST(RootSystem, PositiveRootCountsMatchTable) {
    for (auto [t, outer] : all_types(9)) {
        if (outer != 1) continue;
        EXPECT_EQ(static_cast<long long>(positive_roots(cartan_matrix(t)).size()), positive_root_count(t)) << t.str();
        long long degsum = 0;
        for (int d : invariant_degrees(t)) degsum += d - 1;
        EXPECT_EQ(degsum, positive_root_count(t)) << t.str();
    }
}

TEST(RootSystem, HighestRootMarks) {
    IntVector e8 = highest_root(cartan_matrix({'E', 8}));
    IntVector expect(8);
    expect << 2, 3, 4, 6, 5, 4, 3, 2;
    EXPECT_EQ(e8, expect);
    IntVector f4(4), g2(2);
    f4 << 2, 3, 4, 2;
    g2 << 3, 2;
    EXPECT_EQ(highest_root(cartan_matrix({'F', 4})), f4);
    EXPECT_EQ(highest_root(cartan_matrix({'G', 2})), g2);
}

TEST(RootSystem, AffineMarksAreNullVectors) {
    for (auto [t, outer] : all_types(9)) {
        if (outer != 1) continue;
        IntMatrix M = affine_cartan_matrix(t);
        IntVector a = null_vector(M);
        EXPECT_EQ(a(0), 1) << t.str();
        EXPECT_EQ(a.tail(t.rank), highest_root(cartan_matrix(t))) << t.str();
        IntVector dual = null_vector(M.transpose());
        EXPECT_EQ(dual(0), 1) << t.str();
        EXPECT_EQ(identify_cartan(cartan_matrix(t)).value_or(CartanType{'X', 0}).str(),
                  (t.family == 'C' && t.rank == 2) ? std::string("B2") : t.str());
    }
}

TEST(RootSystem, DiagramAutomorphismGroupSizes) {
    EXPECT_EQ(diagram_automorphisms(cartan_matrix({'A', 1})).size(), 1u);
    for (int n = 2; n <= 8; ++n) EXPECT_EQ(diagram_automorphisms(cartan_matrix({'A', n})).size(), 2u);
    EXPECT_EQ(diagram_automorphisms(cartan_matrix({'D', 4})).size(), 6u);
    for (int n = 5; n <= 9; ++n) EXPECT_EQ(diagram_automorphisms(cartan_matrix({'D', n})).size(), 2u);
    EXPECT_EQ(diagram_automorphisms(cartan_matrix({'E', 6})).size(), 2u);
    for (CartanType t : {CartanType{'B', 3}, CartanType{'C', 4}, CartanType{'E', 7}, CartanType{'E', 8}, CartanType{'F', 4},
                         CartanType{'G', 2}})
        EXPECT_EQ(diagram_automorphisms(cartan_matrix(t)).size(), 1u) << t.str();
}

TEST(FundamentalGroup, OrdersByType) {
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(UnramifiedGroup::make({'A', n}, 1, "adjoint").omega().size(), static_cast<std::size_t>(n + 1));
    for (int n = 4; n <= 12; ++n) {
        auto G = UnramifiedGroup::make({'D', n}, 1, "adjoint");
        EXPECT_EQ(G.omega_ad().orders(), n % 2 ? std::vector<long long>{4} : std::vector<long long>({2, 2}));
    }
    EXPECT_EQ(UnramifiedGroup::make({'E', 6}, 1, "adjoint").omega_ad().orders(), std::vector<long long>{3});
    EXPECT_EQ(UnramifiedGroup::make({'E', 7}, 1, "adjoint").omega_ad().orders(), std::vector<long long>{2});
    for (auto [t, outer] : all_types(8)) {
        auto tokens = UnramifiedGroup::isogeny_tokens(t, outer);
        if (std::find(tokens.begin(), tokens.end(), "sc") != tokens.end())
            EXPECT_EQ(UnramifiedGroup::make(t, outer, "sc").omega().size(), 1u);
    }
}

TEST(FundamentalGroup, IndexMatchesElementaryDivisors) {
    for (auto [t, outer] : all_types(8)) {
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(t, outer)) {
            auto G = UnramifiedGroup::make(t, outer, iso);
            BasedRootDatum rd = G.root_datum();
            EXPECT_EQ(rd.pairing(), cartan_matrix(t).transpose()) << t.str() << iso;
            long long detA = std::llround(cartan_matrix(t).cast<double>().determinant());
            long long detB = std::llabs(std::llround(rd.cocharacter_basis.cast<double>().determinant()));
            EXPECT_EQ(detA / detB, static_cast<long long>(G.omega().size())) << t.str() << iso;
        }
    }
}

TEST(FundamentalGroup, ActionIsHomomorphicAndByAutomorphisms) {
    for (auto [t, outer] : all_types(8)) {
        auto G = UnramifiedGroup::make(t, outer, "adjoint");
        EXPECT_EQ(perm_order(G.theta()), outer);
        const auto& W = G.omega_ad();
        for (const auto& x : W.elements()) {
            EXPECT_TRUE(is_affine_automorphism(G, G.omega_perm(x))) << t.str();
            EXPECT_EQ(G.omega_perm(W.apply_theta(x)), compose(compose(G.theta(), G.omega_perm(x)), inverse(G.theta()))) << t.str();
            for (const auto& y : W.elements())
                EXPECT_EQ(G.omega_perm(W.add(x, y)), compose(G.omega_perm(x), G.omega_perm(y))) << t.str();
        }
    }
}

TEST(FundamentalGroup, TypeARotation) {
    for (int n = 2; n <= 12; ++n) {
        auto G = UnramifiedGroup::make({'A', n - 1}, 1, "adjoint");
        Perm p = G.omega_perm(G.special_element({1}));
        for (int i = 0; i < n; ++i) EXPECT_EQ(p[static_cast<std::size_t>(i)], (i + 1) % n);
    }
}

TEST(FundamentalGroup, KottwitzExamples) {
    for (int n = 3; n <= 11; n += 2) {
        auto G = UnramifiedGroup::make({'A', n - 1}, 2, "adjoint");
        EXPECT_EQ(G.omega_ad().invariants().size(), 1u);
        EXPECT_EQ(coinvariants(G.omega_ad()).group.size(), 1);
    }
    for (int n = 4; n <= 12; n += 2) {
        auto G = UnramifiedGroup::make({'A', n - 1}, 2, "adjoint");
        EXPECT_EQ(G.omega_ad().invariants().size(), 2u);
    }
    for (int n = 2; n <= 8; ++n) {
        auto G = UnramifiedGroup::make({'C', n}, 1, "adjoint");
        EXPECT_EQ(G.omega_ad().invariants().size(), 2u);
        EXPECT_EQ(G.omega_ad().dual().invariants().size(), 2u);
    }
    auto T = UnramifiedGroup::make({'D', 4}, 3, "adjoint");
    EXPECT_EQ(T.omega_ad().invariants().size(), 1u);
    EXPECT_EQ(coinvariants(T.omega_ad()).group.size(), 1);
}

TEST(FundamentalGroup, HalfSpinExcludedUnderOuterTwist) {
    EXPECT_THROW(UnramifiedGroup::make({'D', 4}, 3, "so"), std::invalid_argument);
    EXPECT_NO_THROW(UnramifiedGroup::make({'D', 6}, 1, "hs1"));
    auto tokens = UnramifiedGroup::isogeny_tokens({'D', 6}, 2);
    EXPECT_EQ(std::count(tokens.begin(), tokens.end(), "hs1"), 0);
    auto G = UnramifiedGroup::make({'D', 6}, 1, "hs1");
    int stable = 0;
    for (const auto& tau : G.finite_automorphisms()) stable += G.stabilizes_omega(tau);
    EXPECT_EQ(stable, 1);
}

TEST(RestrictionOfScalars, FrobeniusOrders) {
    auto base = UnramifiedGroup::make({'D', 4}, 3, "adjoint");
    auto R = UnramifiedGroup::restrict_scalars(base, 2);
    EXPECT_EQ(R.node_count(), 10);
    EXPECT_EQ(perm_order(R.theta()), 6);
    auto A = UnramifiedGroup::restrict_scalars(UnramifiedGroup::make({'A', 1}, 1, "adjoint"), 3);
    EXPECT_EQ(perm_order(A.theta()), 3);
    EXPECT_EQ(A.factor_theta(), (Perm{1, 2, 0}));
    EXPECT_EQ(A.omega().size(), 8u);
    EXPECT_EQ(A.omega_ad().invariants().size(), 2u);
    auto one = UnramifiedGroup::restrict_scalars(base, 1);
    EXPECT_EQ(one.theta(), base.theta());
    EXPECT_EQ(one.omega(), base.omega());
}

TEST(SpecGrammar, ParsesAndReportsPositions) {
    GroupSpec s = parse_spec("2A5:adjoint:w1");
    EXPECT_EQ(s.type.str(), "A5");
    EXPECT_EQ(s.outer_order, 2);
    EXPECT_EQ(s.isogeny, "adjoint");
    EXPECT_EQ(s.form, "w1");
    EXPECT_EQ(s.str(), "2A5:adjoint:w1");
    EXPECT_THROW(parse_spec("2B3:adjoint:1"), std::invalid_argument);
    EXPECT_THROW(parse_spec("A5:adjoint"), std::invalid_argument);
    EXPECT_THROW(parse_spec("A5::1"), std::invalid_argument);
    try {
        parse_spec("E9:adjoint:1");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("position 0"), std::string::npos);
    }
}
