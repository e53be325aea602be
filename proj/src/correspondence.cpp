#include <fnmatch.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "cusp/correspondence.hpp"

namespace cusp {

namespace {

using Subgroup = FinAbGroup::Subgroup;

long long size_of(const Subgroup& H) { return static_cast<long long>(H.size()); }

bool glob_match(const std::string& pattern, const std::string& text) { return fnmatch(pattern.c_str(), text.c_str(), 0) == 0; }

bool has_glob(const std::string& s) { return s.find_first_of("*?[") != std::string::npos; }

// Characters of Omega^theta trivial on N and on the stabilizer, as subgroups of the character group.
void fill_dual_stabilizers(PacketInvariants& inv, const FinAbGroup& W, const Subgroup& oth, const Subgroup& N, const Subgroup& stab) {
    FinAbGroup::Embedded E = to_group(W, oth);
    std::map<FinAbGroup::Element, FinAbGroup::Element> preimage;
    for (const auto& x : E.group.elements()) preimage[E.image(W, x)] = x;
    auto pull = [&](const Subgroup& H) {
        Subgroup out;
        for (const auto& h : intersect(H, oth)) out.insert(preimage.at(h));
        return out;
    };
    inv.omega_theta = E.group;
    inv.stabilizer_lambda = E.group.annihilator(pull(N));
    inv.stabilizer_pair = E.group.annihilator(pull(stab));
}

long long exact_div(long long a, long long b) { return b != 0 && a % b == 0 ? a / b : 0; }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

std::vector<int> apply_perm(const Perm& p, const std::vector<int>& nodes) {
    std::vector<int> out;
    for (int j : nodes) out.push_back(p[static_cast<std::size_t>(j)]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

long long euler_phi(long long n) {
    long long r = n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

Subgroup omega_theta(const UnramifiedGroup& G) { return intersect(G.omega(), G.omega_ad().invariants()); }

PacketInvariants compute_invariants(const UnramifiedGroup& G, const ParahoricClass& pc, long long class_size, const GaloisData& gd) {
    const FinAbGroup& W = G.omega_ad();
    const Subgroup oth = omega_theta(G);
    const Subgroup stab = intersect(gd.M, G.omega());
    PacketInvariants inv;
    inv.a = size_of(intersect(gd.N, oth));
    long long e = index(W.invariants(), sum(W, oth, gd.M));
    Subgroup sn = sum(W, stab, gd.N);
    long long k = is_subset(sn, gd.M) ? index(gd.M, sn) : 0;
    inv.b = exact_div(gd.b_ad * e, k);
    inv.g = exact_div(size_of(stab), inv.a);
    inv.g_prime = pc.g_prime;
    inv.a_prime = pc.g_prime * size_of(pc.stabilizer);
    inv.b_prime = class_size;
    fill_dual_stabilizers(inv, W, oth, gd.N, stab);
    return inv;
}

std::vector<std::string> invariant_failures(const UnramifiedGroup& G, const ParahoricClass& pc, const PacketInvariants& inv,
                                            const GaloisData& gd) {
    std::vector<std::string> f;
    auto fail = [&](const std::string& what) { f.push_back(what); };
    if (!is_subset(gd.N, gd.M)) fail("N not contained in M");
    if (gd.M != pc.stabilizer_ad) fail("M differs from the adjoint stabilizer of the support");
    if (inv.b <= 0) fail("b is not a positive integer");
    if (inv.g <= 0) fail("g is not a positive integer");
    if (inv.a * inv.b != inv.a_prime * inv.b_prime)
        fail("ab = " + std::to_string(inv.a * inv.b) + " but a'b' = " + std::to_string(inv.a_prime * inv.b_prime));
    if (inv.b_prime != euler_phi(gd.ns))
        fail("b' = " + std::to_string(inv.b_prime) + " but phi(n_s) = " + std::to_string(euler_phi(gd.ns)));
    long long orbits = exact_div(inv.a_prime * inv.b_prime, size_of(pc.stabilizer));
    if (orbits != inv.g_prime * euler_phi(gd.ns)) fail("orbit count differs from g' phi(n_s)");
    if (!is_subset(inv.stabilizer_pair, inv.stabilizer_lambda)) fail("pair stabilizer not inside the parameter stabilizer");
    else if (index(inv.stabilizer_lambda, inv.stabilizer_pair) != inv.g) fail("stabilizer index differs from g");
    (void)G;
    return f;
}

IsogenyLevel adjoint_level(const UnramifiedGroup& adjoint, const ParahoricClass& pc, long long class_size, const GaloisData& gd) {
    IsogenyLevel L;
    L.inv = compute_invariants(adjoint, pc, class_size, gd);
    L.omega_theta = omega_theta(adjoint);
    L.stabilizer = pc.stabilizer;
    return L;
}

IsogenyLevel isogeny_transfer(const UnramifiedGroup& target, const IsogenyLevel& source, const Subgroup& N) {
    const FinAbGroup& W = target.omega_ad();
    if (!is_subset(N, W.invariants())) throw std::invalid_argument("N is not theta-fixed");
    IsogenyLevel T;
    T.omega_theta = omega_theta(target);
    if (!is_subset(T.omega_theta, source.omega_theta)) throw std::invalid_argument("target is not below the source isogeny");
    T.stabilizer = intersect(source.stabilizer, target.omega());
    if (source.omega_theta == W.invariants() && !is_subset(N, source.stabilizer))
        throw std::invalid_argument("N is not contained in the adjoint stabilizer");
    long long rel = index(source.omega_theta, sum(W, T.omega_theta, source.stabilizer));
    long long split = index(sum(W, source.stabilizer, N), sum(W, T.stabilizer, N));
    PacketInvariants& inv = T.inv;
    inv.g_prime = source.inv.g_prime * rel;
    inv.a = size_of(intersect(N, T.omega_theta));
    inv.a_prime = size_of(T.stabilizer) * inv.g_prime;
    inv.b = exact_div(source.inv.b * rel, split);
    inv.b_prime = source.inv.b_prime;
    inv.g = exact_div(size_of(T.stabilizer), inv.a);
    fill_dual_stabilizers(inv, W, T.omega_theta, N, T.stabilizer);
    return T;
}

bool double_ratio_holds(const IsogenyLevel& ad, const IsogenyLevel& t) {
    long long pt = t.inv.a_prime * t.inv.b_prime, pad = ad.inv.a_prime * ad.inv.b_prime;
    long long gt = t.inv.a * t.inv.b, gad = ad.inv.a * ad.inv.b;
    long long mid_num = t.inv.g_prime * size_of(t.stabilizer), mid_den = size_of(ad.stabilizer);
    return pt * mid_den == mid_num * pad && pt * gad == gt * pad;
}

EnhancementSplit enhancement_count_split(const UnramifiedGroup& target, const GaloisData& gd) {
    const FinAbGroup& W = target.omega_ad();
    EnhancementSplit s;
    s.extensions = index(W.invariants(), sum(W, omega_theta(target), gd.M));
    s.dimension_ratio = index(gd.M, sum(W, intersect(gd.M, target.omega()), gd.N));
    return s;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Unverifiable: return "unverifiable";
    }
    return "";
}

std::vector<PacketReport> group_reports(const UnramifiedGroup& G, const std::string& form_filter, int ord_psi) {
    std::vector<PacketReport> out;
    const DualDiagram D = dual_affine_diagram(G.base_type(), G.outer_order());
    const std::string label = G.type_label();
    for (const auto& form : enumerate_inner_forms(G)) {
        bool wanted = form_filter == "an" ? form.transitive : glob_match(form_filter, form.name);
        if (!wanted) continue;
        for (const auto& pc : enumerate_parahoric_supports(G, form)) {
            for (const auto& cls : degree_classes(pc.cuspidal)) {
                CaseMatch m = classify(G, form, pc, cls);
                GaloisData gd;
                gd.N = resolve_subgroup(G, form, m.row->N);
                gd.M = resolve_subgroup(G, form, m.row->M);
                std::vector<int> cands = kac_candidates(D, m.geometric, m.ns_allowed);
                int node = cands.empty() ? -1 : cands[0];
                if (m.row->id == "A.Aniso") {
                    int v = G.special_nodes(form.omega)[0];
                    if (std::find(cands.begin(), cands.end(), v) != cands.end()) node = v;
                }
                std::optional<UnramifiedParam> param;
                if (node >= 0) param = make_param(D, node);
                gd.ns = param ? param->ns : (m.ns_allowed.empty() ? 1 : m.ns_allowed[0]);
                gd.b_ad = m.row->b_ad == 0 ? euler_phi(gd.ns) : m.row->b_ad;

                PacketReport base;
                base.spec = label + ":" + G.isogeny() + ":" + form.name;
                base.type_label = label;
                base.isogeny = G.isogeny();
                base.form = form.name;
                base.omega = form.omega;
                base.J = pc.J;
                base.orbit = pc.orbit;
                base.association = pc.association;
                base.support = nodes_str(G, pc.J);
                base.quotient = pc.quotient.str();
                base.degree_class = cls[0].degree_class;
                base.row = m.row->id;
                base.kac_node = node;
                base.kac_candidates = cands;
                base.ns = gd.ns;
                base.geometric = param ? types_str(param->centralizer) : m.geometric;
                base.inv = compute_invariants(G, pc, static_cast<long long>(cls.size()), gd);
                base.failures = invariant_failures(G, pc, base.inv, gd);
                if (!param) base.failures.push_back("no Kac point matches the geometric diagram " + m.geometric);
                base.thm_b = base.failures.empty() ? Status::Pass : Status::Fail;
                base.orbit_count = exact_div(base.inv.a_prime * base.inv.b_prime, static_cast<long long>(pc.stabilizer.size()));
                if (param && param->weights) {
                    base.weights = param->weights;
                    base.gamma_abs = gamma_abs_at_zero(*param->weights, ord_psi);
                }

                for (const auto& entry : cls) {
                    PacketReport r = base;
                    r.entry = entry.id;
                    try {
                        r.fdeg = formal_degree(pc, entry);
                    } catch (const DegreeUnavailable&) {
                    }
                    if (!m.row->hii.empty() && G.isogeny() == "adjoint" && r.fdeg && r.gamma_abs) {
                        r.hii_result = hii_check(r.fdeg->value, *r.gamma_abs, 1, static_cast<long long>(G.omega().size()));
                        r.hii = r.hii_result->holds ? Status::Pass : Status::Fail;
                    }
                    out.push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

std::vector<Perm> admissible_automorphisms(const UnramifiedGroup& G) {
    std::vector<Perm> out;
    const Perm id = identity_perm(G.node_count());
    for (const auto& tau : G.finite_automorphisms())
        if (tau != id && G.commutes_with_theta(tau) && G.stabilizes_omega(tau)) out.push_back(tau);
    return out;
}

EquivarianceResult equivariance_check(const UnramifiedGroup& G, const std::vector<PacketReport>& reports, const Perm& tau) {
    const FinAbGroup& W = G.omega_ad();
    auto forms = enumerate_inner_forms(G);
    EquivarianceResult res;
    res.image.assign(reports.size(), -1);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const PacketReport& r = reports[i];
        FinAbGroup::Element x = G.transport(tau, r.omega);
        std::vector<int> O;
        std::string target_form;
        for (const auto& f : forms) {
            for (const auto& y : W.elements()) {
                FinAbGroup::Element shifted = W.add(x, W.add(y, W.neg(W.apply_theta(y))));
                if (shifted != f.omega) continue;
                O = apply_perm(G.omega_perm(y), apply_perm(tau, r.orbit));
                target_form = f.name;
                break;
            }
            if (!target_form.empty()) break;
        }
        for (std::size_t j = 0; j < reports.size(); ++j) {
            const PacketReport& s = reports[j];
            if (s.form != target_form || s.entry != r.entry) continue;
            if (std::find(s.association.begin(), s.association.end(), O) == s.association.end()) continue;
            res.image[i] = static_cast<int>(j);
            break;
        }
        const std::string where = r.spec + " J=" + r.support + " " + r.entry;
        if (res.image[i] < 0) {
            res.problems.push_back(where + ": no image under the automorphism");
            continue;
        }
        const PacketReport& s = reports[static_cast<std::size_t>(res.image[i])];
        if (s.row != r.row || !same_counts(s.inv, r.inv)) res.problems.push_back(where + ": invariants not preserved");
        if (r.fdeg.has_value() != s.fdeg.has_value() || (r.fdeg && r.fdeg->value != s.fdeg->value))
            res.problems.push_back(where + ": formal degree not preserved");
        if (r.gamma_abs.has_value() != s.gamma_abs.has_value() || (r.gamma_abs && *r.gamma_abs != *s.gamma_abs))
            res.problems.push_back(where + ": gamma factor not preserved");
    }
    res.consistent = res.problems.empty();
    return res;
}

std::vector<std::string> assign_orbits(const UnramifiedGroup& G, std::vector<PacketReport>& reports) {
    UnionFind uf(reports.size());
    std::vector<std::string> problems;
    for (const auto& tau : admissible_automorphisms(G)) {
        auto res = equivariance_check(G, reports, tau);
        problems.insert(problems.end(), res.problems.begin(), res.problems.end());
        for (std::size_t i = 0; i < reports.size(); ++i)
            if (res.image[i] >= 0) uf.unite(static_cast<int>(i), res.image[i]);
    }
    for (std::size_t i = 0; i < reports.size(); ++i) reports[i].orbit_id = "o" + std::to_string(uf.find(static_cast<int>(i)));
    return problems;
}

std::vector<std::pair<CartanType, int>> catalogue_types(int max_rank) {
    std::vector<std::pair<CartanType, int>> out;
    if (const char* path = std::getenv("CUSP_CATALOGUE")) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error(std::string("cannot read catalogue ") + path);
        std::string line;
        while (std::getline(in, line)) {
            line.erase(0, line.find_first_not_of(" \t"));
            line.erase(line.find_last_not_of(" \t\r") + 1);
            if (line.empty() || line[0] == '#') continue;
            out.push_back(parse_type_label(line));
        }
        return out;
    }
    for (int n = 1; n <= max_rank; ++n) out.push_back({{'A', n}, 1});
    for (int n = 2; n <= max_rank; ++n) out.push_back({{'A', n}, 2});
    for (int n = 3; n <= max_rank; ++n) out.push_back({{'B', n}, 1});
    for (int n = 2; n <= max_rank; ++n) out.push_back({{'C', n}, 1});
    for (int n = 4; n <= max_rank; ++n) out.push_back({{'D', n}, 1});
    for (int n = 4; n <= max_rank; ++n) out.push_back({{'D', n}, 2});
    out.push_back({{'D', 4}, 3});
    out.push_back({{'E', 6}, 1});
    out.push_back({{'E', 6}, 2});
    out.push_back({{'E', 7}, 1});
    out.push_back({{'E', 8}, 1});
    out.push_back({{'F', 4}, 1});
    out.push_back({{'G', 2}, 1});
    return out;
}

std::vector<UnramifiedGroup> select_groups(const std::string& spec, int max_rank) {
    auto c1 = spec.find(':');
    auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos) parse_spec(spec);
    const std::string type_glob = spec.substr(0, c1), iso_glob = spec.substr(c1 + 1, c2 - c1 - 1);
    std::vector<std::pair<CartanType, int>> types;
    if (has_glob(type_glob)) {
        for (const auto& [t, outer] : catalogue_types(max_rank))
            if (glob_match(type_glob, UnramifiedGroup::make(t, outer, "adjoint").type_label())) types.push_back({t, outer});
    } else {
        GroupSpec gs = parse_spec(spec);
        types.push_back({gs.type, gs.outer_order});
    }
    std::vector<UnramifiedGroup> out;
    for (const auto& [t, outer] : types)
        for (const auto& iso : UnramifiedGroup::isogeny_tokens(t, outer))
            if (glob_match(iso_glob, iso)) out.push_back(UnramifiedGroup::make(t, outer, iso));
    if (!has_glob(iso_glob) && out.empty())
        throw std::invalid_argument("spec '" + spec + "': unknown isogeny at position " + std::to_string(c1 + 1));
    return out;
}

std::vector<PacketReport> group_full_report(const UnramifiedGroup& G, const std::string& form_glob, int ord_psi) {
    std::vector<PacketReport> out;
    auto reports = group_reports(G, "*", ord_psi);
    auto problems = assign_orbits(G, reports);
    for (auto& r : reports) {
        for (const auto& p : problems)
            if (p.rfind(r.spec + " J=" + r.support + " " + r.entry + ":", 0) == 0) {
                r.failures.push_back("equivariance: " + p);
                r.equivariance = Status::Fail;
            }
    }
    auto forms = enumerate_inner_forms(G);
    for (auto& r : reports) {
        bool wanted = glob_match(form_glob, r.form);
        if (form_glob == "an")
            for (const auto& f : forms)
                if (f.name == r.form) wanted = f.transitive;
        if (wanted) out.push_back(std::move(r));
    }
    return out;
}

std::vector<PacketReport> full_report(const std::string& spec, int max_rank, int ord_psi) {
    const std::string form_glob = spec.substr(spec.rfind(':') + 1);
    std::vector<PacketReport> out;
    for (const auto& G : select_groups(spec, max_rank)) {
        auto part = group_full_report(G, form_glob, ord_psi);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

FDeg formal_degree_with_central_torus(const ParahoricClass& pc, const CuspidalEntry& entry, const IntPoly& torus_order, int torus_dim) {
    FDeg base = formal_degree(pc, entry);
    FiniteQuotient q = pc.quotient;
    q.torus_order = q.torus_order * torus_order;
    q.torus_dim += torus_dim;
    q.dimension += torus_dim;
    FDeg out = base;
    out.volume = parahoric_volume(q);
    out.value = base.dim_sigma / (RatFunc(base.stabilizer_order) * out.volume);
    out.normalizer_form = out.value;
    return out;
}

namespace {

std::string row_key(const PacketReport& r) { return r.form + "|" + r.support + "|" + r.degree_class; }

const ParahoricClass& find_class(const std::vector<ParahoricClass>& pcs, const std::vector<int>& J) {
    for (const auto& pc : pcs)
        if (pc.J == J) return pc;
    throw std::logic_error("parahoric class not found");
}

const InnerForm& find_form(const std::vector<InnerForm>& forms, const std::string& name) {
    for (const auto& f : forms)
        if (f.name == name) return f;
    throw std::logic_error("inner form not found");
}

}  // namespace

CheckSummary isogeny_transfer_check(const CartanType& type, int outer_order) {
    CheckSummary out;
    const auto ad = UnramifiedGroup::make(type, outer_order, "adjoint");
    const auto ad_forms = enumerate_inner_forms(ad);
    std::map<std::string, std::vector<ParahoricClass>> ad_pcs;
    for (const auto& f : ad_forms) ad_pcs[f.name] = enumerate_parahoric_supports(ad, f);
    const auto ad_reports = group_reports(ad, "*", -1);
    std::map<std::string, long long> class_size;
    for (const auto& r : ad_reports) ++class_size[row_key(r)];

    std::vector<UnramifiedGroup> lower;
    for (const auto& iso : UnramifiedGroup::isogeny_tokens(type, outer_order))
        if (iso != "adjoint") lower.push_back(UnramifiedGroup::make(type, outer_order, iso));

    std::set<std::string> done;
    for (const auto& r : ad_reports) {
        if (!done.insert(row_key(r)).second) continue;
        const InnerForm& form = find_form(ad_forms, r.form);
        const ParahoricClass& pc = find_class(ad_pcs[r.form], r.J);
        const CaseRow& row = case_row(r.row);
        GaloisData gd;
        gd.N = resolve_subgroup(ad, form, row.N);
        gd.M = resolve_subgroup(ad, form, row.M);
        gd.ns = r.ns;
        gd.b_ad = row.b_ad == 0 ? euler_phi(r.ns) : row.b_ad;
        const IsogenyLevel source = adjoint_level(ad, pc, class_size[row_key(r)], gd);
        if (!same_counts(source.inv, r.inv)) out.problems.push_back(r.spec + " J=" + r.support + ": adjoint level differs");

        for (const auto& T : lower) {
            const std::string where = T.type_label() + ":" + T.isogeny() + ":" + r.form + " J=" + r.support + " " + r.degree_class;
            const auto direct = group_reports(T, r.form, -1);
            const PacketReport* match = nullptr;
            for (const auto& d : direct)
                if (d.J == r.J && d.degree_class == r.degree_class) match = &d;
            if (!match) {
                out.problems.push_back(where + ": no direct row");
                continue;
            }
            const FinAbGroup::Subgroup NT = resolve_subgroup(T, form, row.N);
            const IsogenyLevel level = isogeny_transfer(T, source, NT);
            ++out.compared;
            if (!same_counts(level.inv, match->inv)) out.problems.push_back(where + ": transfer differs from the direct computation");
            if (!double_ratio_holds(source, level)) out.problems.push_back(where + ": double ratio fails");
            for (const auto& I : lower) {
                if (I.isogeny() == T.isogeny() || !is_subset(T.omega(), I.omega())) continue;
                const IsogenyLevel mid = isogeny_transfer(I, source, resolve_subgroup(I, form, row.N));
                const IsogenyLevel composed = isogeny_transfer(T, mid, NT);
                ++out.compared;
                if (!same_counts(composed.inv, level.inv))
                    out.problems.push_back(where + ": transfer through " + I.isogeny() + " differs");
            }
        }
    }
    return out;
}

CheckSummary isogeny_fdeg_ratio_check(const CartanType& type, int outer_order) {
    CheckSummary out;
    const auto ad = UnramifiedGroup::make(type, outer_order, "adjoint");
    const auto ad_reports = group_reports(ad, "*", -1);
    for (const auto& iso : UnramifiedGroup::isogeny_tokens(type, outer_order)) {
        const auto T = UnramifiedGroup::make(type, outer_order, iso);
        for (const auto& t : group_reports(T, "*", -1)) {
            if (!t.fdeg) continue;
            for (const auto& a : ad_reports) {
                if (a.form != t.form || a.J != t.J || a.entry != t.entry || !a.fdeg) continue;
                ++out.compared;
                RatFunc ratio = RatFunc(a.fdeg->stabilizer_order) / RatFunc(t.fdeg->stabilizer_order);
                if (t.fdeg->value != a.fdeg->value * ratio)
                    out.problems.push_back(t.spec + " J=" + t.support + " " + t.entry + ": isogeny ratio of formal degrees fails");
            }
        }
    }
    return out;
}

CheckSummary central_torus_ratio_check(const CartanType& type, int outer_order, const IntPoly& torus_order, int torus_dim) {
    CheckSummary out;
    const RatFunc expected = RatFunc::t_power(torus_dim) / RatFunc::from_q(torus_order);
    for (const auto& iso : UnramifiedGroup::isogeny_tokens(type, outer_order)) {
        const auto G = UnramifiedGroup::make(type, outer_order, iso);
        for (const auto& form : enumerate_inner_forms(G))
            for (const auto& pc : enumerate_parahoric_supports(G, form))
                for (const auto& e : pc.cuspidal.entries) {
                    if (!e.degree) continue;
                    ++out.compared;
                    const FDeg with = formal_degree_with_central_torus(pc, e, torus_order, torus_dim);
                    if (with.value / formal_degree(pc, e).value != expected)
                        out.problems.push_back(G.type_label() + ":" + iso + ":" + form.name + " " + e.id + ": central torus ratio fails");
                }
    }
    return out;
}

}  // namespace cusp
