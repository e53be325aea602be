#include <chrono>
#include <cstdio>
#include <functional>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "cusp/weilres.hpp"

using namespace cusp;

namespace {

using Quad = std::array<long long, 4>;

Quad abab(const PacketReport& r) { return {r.inv.a, r.inv.b, r.inv.a_prime, r.inv.b_prime}; }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

Outcome invariant_suite() {
    Outcome o;
    auto reports = full_report("*:*:*", 12);
    for (const auto& r : reports) {
        if (r.thm_b != Status::Pass) o.fail(r.spec + " " + r.support + ": " + (r.failures.empty() ? "" : r.failures[0]));
        if (r.inv.a * r.inv.b != r.inv.a_prime * r.inv.b_prime) o.fail(r.spec + " " + r.support + ": ab != a'b'");
        if (r.inv.b_prime != euler_phi(r.ns)) o.fail(r.spec + " " + r.support + ": b' != phi(n_s)");
    }
    if (reports.size() < 300) o.fail("catalogue too small");
    if (o.pass) o.detail = std::to_string(reports.size()) + " rows";
    return o;
}

Outcome spot_values() {
    Outcome o;
    for (int n = 2; n <= 12; ++n)
        for (const auto& r : full_report("A" + std::to_string(n - 1) + ":adjoint:an"))
            if (abab(r) != Quad{n, 1, n, 1}) o.fail(r.spec + " is not (n,1,n,1)");
    long long unitary = 0;
    for (int n = 2; n <= 12; ++n)
        for (const auto& r : full_report("2A" + std::to_string(n) + ":adjoint:*"))
            if (r.row == "2A.SsAt") {
                ++unitary;
                if (abab(r) != Quad{1, 1, 1, 1}) o.fail(r.spec + " " + r.support + " is not (1,1,1,1)");
            }
    if (unitary == 0) o.fail("no unitary rows with distinct factors");

    long long e7top = 0, e7e6 = 0;
    for (const auto& r : full_report("E7:adjoint:*")) {
        if (r.row == "E7.E7") {
            ++e7top;
            if (abab(r) != Quad{1, 2, 1, 2}) o.fail("E7 J=E7 is not (1,2,1,2)");
        }
        if (r.quotient.rfind("2E6", 0) == 0) {
            ++e7e6;
            if (r.inv.a != 2 || r.inv.a_prime != 2) o.fail("E7 J=E6 has a or a' != 2");
        }
    }
    if (e7top == 0 || e7e6 == 0) o.fail("E7 rows missing");

    long long e6top = 0, e6d4 = 0;
    for (const auto& r : full_report("E6:adjoint:*")) {
        if (r.row == "E6.E6") {
            ++e6top;
            if (r.inv.b != 2 || r.inv.b_prime != 2) o.fail("E6 J=E6 has b or b' != 2");
        }
        if (r.quotient.rfind("3D4", 0) == 0) {
            ++e6d4;
            if (abab(r) != Quad{3, 1, 3, 1}) o.fail("E6 J=3D4 is not (3,1,3,1)");
        }
    }
    if (e6top == 0 || e6d4 == 0) o.fail("E6 rows missing");

    std::multiset<Quad> e6twisted;
    for (const auto& r : full_report("2E6:adjoint:1")) e6twisted.insert(abab(r));
    if (e6twisted != std::multiset<Quad>{{1, 1, 1, 1}, {1, 2, 1, 2}, {1, 2, 1, 2}}) o.fail("2E6 rows differ");

    auto triality = full_report("3D4:adjoint:*");
    if (triality.size() != 2) o.fail("3D4 does not have two rows");
    for (const auto& r : triality)
        if (abab(r) != Quad{1, 1, 1, 1}) o.fail("3D4 row is not all ones");
    return o;
}

Outcome isogeny_transfer_suite() {
    Outcome o;
    std::vector<std::pair<CartanType, int>> types;
    for (int n = 1; n <= 11; ++n) types.push_back({{'A', n}, 1});
    for (int n = 3; n <= 12; ++n) types.push_back({{'B', n}, 1});
    for (int n = 2; n <= 12; ++n) types.push_back({{'C', n}, 1});
    for (int n = 4; n <= 12; ++n) types.push_back({{'D', n}, 1});
    types.push_back({{'E', 6}, 1});
    types.push_back({{'E', 7}, 1});
    long long compared = 0;
    for (const auto& [t, outer] : types) {
        auto s = isogeny_transfer_check(t, outer);
        compared += s.compared;
        if (!s.ok()) o.fail(s.problems[0]);
    }
    if (compared == 0) o.fail("nothing compared");
    if (o.pass) o.detail = std::to_string(compared) + " transfers";
    return o;
}

Outcome hii_suite() {
    Outcome o;
    for (int n = 2; n <= 6; ++n) {
        auto G = UnramifiedGroup::make({'A', n - 1}, 1, "adjoint");
        auto w = adjoint_weights(dual_affine_diagram({'A', n - 1}, 1), 0);
        const RatFunc gamma = gamma_abs_at_zero(w, -1);
        long long checked = 0;
        for (const auto& form : enumerate_inner_forms(G)) {
            if (!form.transitive) continue;
            for (const auto& pc : enumerate_parahoric_supports(G, form))
                for (const auto& e : pc.cuspidal.entries) {
                    ++checked;
                    auto r = hii_check(formal_degree(pc, e).value, gamma, 1, n);
                    if (!r.holds) o.fail("n=" + std::to_string(n) + ": " + r.lhs.str() + " vs " + r.rhs.str());
                }
        }
        if (checked == 0) o.fail("no division algebra row for n=" + std::to_string(n));
    }
    return o;
}

Outcome formal_degree_ratios() {
    Outcome o;
    long long isogeny = 0, torus = 0;
    for (const auto& [t, outer] : catalogue_types(12)) {
        auto a = isogeny_fdeg_ratio_check(t, outer);
        auto b = central_torus_ratio_check(t, outer, IntPoly{1, 1}, 1);
        auto c = central_torus_ratio_check(t, outer, IntPoly{1, 1, 1}, 2);
        isogeny += a.compared;
        torus += b.compared + c.compared;
        for (const auto* s : {&a, &b, &c})
            if (!s->ok()) o.fail(s->problems[0]);
    }
    if (isogeny == 0 || torus == 0) o.fail("no rows with degree polynomials");
    if (o.pass) o.detail = std::to_string(isogeny) + " isogeny and " + std::to_string(torus) + " torus rows";
    return o;
}

Outcome restriction_suite() {
    Outcome o;
    long long multisets = 0;
    for (const auto& [t, outer] : catalogue_types(12)) {
        auto D = dual_affine_diagram(t, outer);
        for (int node = 0; node < static_cast<int>(D.labels.size()); ++node) {
            std::vector<WeightString> w;
            try {
                w = adjoint_weights(D, node);
            } catch (const Unavailable&) {
                continue;
            }
            ++multisets;
            for (int d = 1; d <= 4; ++d)
                for (int ord_psi : {-1, 0, 1, 2}) {
                    auto r = transport_local_factors(w, d, ord_psi, 1);
                    if (!r.L_inductive) o.fail(D.name + " node " + std::to_string(node) + ": L not inductive");
                    if (!r.eps_relation) o.fail(D.name + " node " + std::to_string(node) + ": epsilon relation fails");
                    if (ord_psi % 2 == 0 && r.expected_sign != 1) o.fail("sign for even ord_psi");
                }
        }
    }
    long long rows = 0;
    for (const auto& [t, outer] : catalogue_types(12))
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(t, outer))
            for (int d = 1; d <= 3; ++d) {
                auto rep = transport_counts(restrict_spec(UnramifiedGroup::make(t, outer, iso), d));
                rows += static_cast<long long>(rep.rows.size());
                if (!rep.ok()) {
                    std::string why = rep.problems.empty() ? "" : rep.problems[0];
                    for (const auto& r : rep.rows)
                        if (why.empty() && !r.failures.empty()) why = r.base_spec + " " + r.failures[0];
                    o.fail(t.str() + " degree " + std::to_string(d) + ": " + why);
                }
            }
    if (o.pass) o.detail = std::to_string(multisets) + " multisets, " + std::to_string(rows) + " transported rows";
    return o;
}

Outcome equivariance_suite() {
    Outcome o;
    auto reports = full_report("*:*:*", 12);
    for (const auto& r : reports)
        if (r.equivariance != Status::Pass) o.fail(r.spec + " " + r.support + " " + r.entry);
    for (const auto& iso : UnramifiedGroup::isogeny_tokens({'D', 4}, 3)) {
        auto G = UnramifiedGroup::make({'D', 4}, 3, iso);
        auto rows = group_reports(G, "*", -1);
        auto taus = admissible_automorphisms(G);
        if (taus.empty()) o.fail("no triality automorphism for 3D4:" + iso);
        for (const auto& tau : taus) {
            auto res = equivariance_check(G, rows, tau);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (res.image[i] != static_cast<int>(i)) o.fail("3D4:" + iso + " row moved by triality");
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"invariant identities over the catalogue", invariant_suite},
        {"spot values", spot_values},
        {"isogeny transfer and double ratio", isogeny_transfer_suite},
        {"formal degree identity for division algebras", hii_suite},
        {"formal degree ratio identities", formal_degree_ratios},
        {"restriction of scalars", restriction_suite},
        {"equivariance", equivariance_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %s: %s (%.2f s)%s%s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", secs,
                    o.detail.empty() ? "" : " ", o.detail.c_str());
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
