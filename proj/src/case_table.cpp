#include <algorithm>
#include <numeric>
#include <set>

#include "cusp/galois.hpp"

namespace cusp {

namespace {

using R = SubgroupRule;

std::vector<CaseRow> build_table() {
    return {
        {"A.Trivial", "A0", "empty", "1", "any", "1", R::Trivial, R::Trivial, 1, "trivial", ""},
        {"A.Aniso", "A", "empty", "omega of order n+1", "A{n}", "1", R::Full, R::Full, 1, "Z(SL_n+1)", "dim_rho=1;S=Omega"},
        {"2A.SsAt", "2A", "2A_s 2A_t, s != t", "any", "any", "1,2", R::Trivial, R::Trivial, 1, "Sp_2q x SO_p", ""},
        {"2A.SsAs", "2A", "2A_s 2A_s", "any", "C{l}", "1", R::Full, R::Full, 1, "Sp_2q", ""},
        {"B.DsBt", "B", "D_s B_t or 2D_s B_t, s > 0", "omega = 1 iff D_s split", "C{np}C{nm}", "ns", R::Full, R::Full, 1,
         "C_n+ x C_n-", ""},
        {"B.Bt", "B", "B_n", "1", "C{np}C{nm}", "ns", R::Trivial, R::Trivial, 1, "C_n", ""},
        {"C.CsCt", "C", "C_s C_t, s != t", "1", "D{p}B{q}", "ns", R::Trivial, R::Trivial, 1, "D_p x B_q", ""},
        {"C.CsCs", "C", "C_s C_s", "any", "B{n}", "1", R::Full, R::Full, 1, "B_n", ""},
        {"C.CsAtCs", "C", "C_s 2A_t C_s", "omega != 1", "D*B*", "2", R::Trivial, R::Full, 2, "two cuspidal local systems", ""},
        {"D.Dn", "D", "D_n", "1", "D{h}D{h}", "2", R::Trivial, R::Trivial, 1, "Spin_n x Spin_n / diagonal", ""},
        {"D.DsDt", "D", "D_s D_t or 2D_s 2D_t, s != t", "1 or eta", "D?D?", "1,2", R::Eta, R::Eta, 1, "", ""},
        {"D.DsDs", "D", "D_s D_s", "any", "D?D?", "1,2", R::Full, R::Full, 1, "", ""},
        {"D.As", "D", "2A_s", "omega of order 2, omega != eta", "any", "1,2", R::Trivial, R::FormGroup, 2, "", ""},
        {"D.DtAsDt.q0", "D", "D_t 2A_s D_t, q = 0", "omega of order 4", "D{n}", "1", R::Full, R::Full, 1, "", ""},
        {"D.DtAsDt", "D", "D_t 2A_s D_t, q > 0", "omega of order 4", "D{p}D{q}", "2", R::Eta, R::Full, 2, "", ""},
        {"2D.DsDt", "2D", "D_s 2D_t", "1", "B?B?", "1", R::Full, R::Full, 1, "B_p x B_q, p != q", ""},
        {"2D.Dt", "2D", "2D_n", "1", "B?B?", "1", R::Trivial, R::Trivial, 1, "Spin_2p+1 x Spin_2q+1 / diagonal", ""},
        {"2D.DtAsDt", "2D", "2(D_t A_s D_t)", "omega != 1", "B?B?", "1", R::Eta, R::Eta, 1, "", ""},
        {"2D.As", "2D", "2A_s", "omega != 1, n odd", "B?B?", "1", R::Trivial, R::Trivial, 1, "", ""},
        {"3D4.1", "3D4", "3D4", "1", "G2", "1", R::Trivial, R::Trivial, 1, "", ""},
        {"3D4.-1", "3D4", "3D4", "1", "A1A1", "2", R::Trivial, R::Trivial, 1, "", ""},
        {"E6.E6", "E6", "E6", "1", "A2A2A2", "3", R::Trivial, R::Trivial, 2, "(Z/3)^3 / C", ""},
        {"E6.3D4.1", "E6", "3D4", "omega of order 3", "E6", "1", R::Full, R::Full, 1, "", ""},
        {"E6.3D4.-1", "E6", "3D4", "omega of order 3", "A5A1", "2", R::Full, R::Full, 1, "", ""},
        {"2E6.1", "2E6", "2E6", "1", "any", "1", R::Trivial, R::Trivial, 1, "", ""},
        {"2E6.theta", "2E6", "2E6", "1", "A2A2", "3", R::Trivial, R::Trivial, 2, "", ""},
        {"E7.E7", "E7", "E7", "1", "A3A3A1", "4", R::Trivial, R::Trivial, 2, "Z/4", ""},
        {"E7.E6.1", "E7", "E6", "omega != 1", "E7", "1", R::Full, R::Full, 1, "", ""},
        {"E7.E6.theta", "E7", "E6", "omega != 1", "A5A2", "3", R::Full, R::Full, 2, "", ""},
        {"E8", "E8", "E8", "1", "any", "tag", R::Trivial, R::Trivial, 0, "", ""},
        {"F4", "F4", "F4", "1", "any", "tag", R::Trivial, R::Trivial, 0, "", ""},
        {"G2", "G2", "G2", "1", "any", "tag", R::Trivial, R::Trivial, 0, "", ""},
    };
}

long long tri(long long k) { return k >= 0 ? k * (k + 1) / 2 : tri(-k - 1); }

int isqrt(int n) {
    int r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// x with x(x+1) = n.
int pronic_root(int n) {
    int x = 0;
    while ((x + 1) * (x + 2) <= n) ++x;
    return x;
}

// k >= 0 with k(k+1)/2 = n.
int triangular_root(int n) {
    int k = 0;
    while (tri(k + 1) <= n) ++k;
    return k;
}

std::string substitute(std::string pattern, const std::map<std::string, int>& params) {
    for (const auto& [key, value] : params) {
        std::string token = "{" + key + "}";
        for (std::size_t pos; (pos = pattern.find(token)) != std::string::npos;) pattern.replace(pos, token.size(), std::to_string(value));
    }
    return pattern;
}

std::vector<int> parse_ns(const std::string& rule) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < rule.size()) {
        std::size_t end = rule.find(',', pos);
        if (end == std::string::npos) end = rule.size();
        out.push_back(std::stoi(rule.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

}  // namespace

std::string to_string(SubgroupRule rule) {
    switch (rule) {
        case R::Trivial: return "1";
        case R::Full: return "Omega_ad^theta";
        case R::Eta: return "{1,eta}";
        case R::FormGroup: return "<omega>";
    }
    return "";
}

const std::vector<CaseRow>& case_table() {
    static const std::vector<CaseRow> table = build_table();
    return table;
}

const CaseRow& case_row(const std::string& id) {
    for (const auto& row : case_table())
        if (row.id == id) return row;
    throw std::out_of_range("no case row " + id);
}

FinAbGroup::Subgroup resolve_subgroup(const UnramifiedGroup& G, const InnerForm& form, SubgroupRule rule) {
    const FinAbGroup& W = G.omega_ad();
    switch (rule) {
        case R::Trivial: return W.trivial_subgroup();
        case R::Full: return W.invariants();
        case R::Eta: return W.generated_by({G.special_element({1})});
        case R::FormGroup: return W.generated_by({form.omega});
    }
    return {};
}

CaseMatch classify(const UnramifiedGroup& G, const InnerForm& form, const ParahoricClass& pc,
                   const std::vector<CuspidalEntry>& degree_class) {
    if (G.factor_count() != 1) throw std::invalid_argument("case rows are keyed by simple groups");
    const CartanType& type = G.base_type();
    const int n = type.rank;
    const int outer = G.outer_order();
    const FiniteQuotient& fq = pc.quotient;
    const std::string& cls = degree_class.at(0).degree_class;
    auto tag_is = [&](const std::string& suffix) { return cls.size() >= suffix.size() && cls.compare(cls.size() - suffix.size(), suffix.size(), suffix) == 0; };

    std::vector<const FiniteFactor*> twistedA, ds, bs, cs;
    for (const auto& f : fq.factors) {
        if (f.type.family == 'A' && f.twist == 2) twistedA.push_back(&f);
        else if (f.type.family == 'D') ds.push_back(&f);
        else if (f.type.family == 'B') bs.push_back(&f);
        else if (f.type.family == 'C') cs.push_back(&f);
    }
    auto rank_of = [](const FiniteFactor* f) { return f->type.rank; };

    CaseMatch m;
    std::string id;
    std::map<std::string, int>& p = m.params;
    p["n"] = n;
    if (outer == 1 && type.family == 'A') {
        id = n == 0 ? "A.Trivial" : "A.Aniso";
    } else if (outer == 2 && type.family == 'A') {
        std::vector<int> sizes;
        for (const auto* f : twistedA) sizes.push_back(rank_of(f) + 1);
        int rest = n + 1 - std::accumulate(sizes.begin(), sizes.end(), 0);
        if (rest > 0) sizes.push_back(rest);
        p["l"] = (n + 1) / 2;
        id = sizes.size() == 2 && sizes[0] == sizes[1] ? "2A.SsAs" : "2A.SsAt";
    } else if (type.family == 'B') {
        int s = ds.empty() ? (form.quasi_split ? 0 : 1) : rank_of(ds[0]);
        int t = 0;
        for (const auto* f : bs)
            if (f->type.rank != s || !ds.empty()) t = rank_of(f);
        // A B2 component can only be the B_t part.
        int y = isqrt(s), x = pronic_root(t);
        p["s"] = s;
        p["t"] = t;
        p["np"] = static_cast<int>(tri(x + y));
        p["nm"] = static_cast<int>(tri(x - y));
        id = s > 0 ? "B.DsBt" : "B.Bt";
        m.ns_allowed = {p["np"] == 0 || p["nm"] == 0 ? 1 : 2};
    } else if (type.family == 'C') {
        std::vector<const FiniteFactor*> cf = cs;
        cf.insert(cf.end(), bs.begin(), bs.end());
        if (!form.quasi_split) {
            id = fq.torus_dim == 0 ? "C.CsCs" : "C.CsAtCs";
        } else if (cf.size() == 2 && rank_of(cf[0]) == rank_of(cf[1])) {
            id = "C.CsCs";
        } else {
            int s = cf.size() > 0 ? rank_of(cf[0]) : 0;
            int t = cf.size() > 1 ? rank_of(cf[1]) : 0;
            int a = pronic_root(s), b = pronic_root(t);
            long long u = (a + b + 1) * (a + b + 1), v = (a - b) * (a - b);
            long long even = u % 2 == 0 ? u : v, odd = u % 2 == 0 ? v : u;
            p["s"] = s;
            p["t"] = t;
            p["p"] = static_cast<int>(even / 2);
            p["q"] = static_cast<int>((odd - 1) / 2);
            id = "C.CsCt";
            m.ns_allowed = {p["p"] == 0 ? 1 : 2};
            if (p["p"] == 0) m.geometric = "B" + std::to_string(n);
        }
    } else if (outer == 1 && type.family == 'D') {
        if (!twistedA.empty()) {
            long long order = G.omega_ad().element_order(form.omega);
            if (order == 2) {
                id = "D.As";
            } else {
                int t = ds.empty() ? 1 : rank_of(ds[0]);
                int s = rank_of(twistedA[0]);
                int y = isqrt(t), k = triangular_root(s + 1);
                long long u = tri(k + 2 * y), v = tri(k - 2 * y);
                p["p"] = static_cast<int>(std::max(u, v) / 2);
                p["q"] = static_cast<int>(std::min(u, v) / 2);
                id = p["q"] == 0 ? "D.DtAsDt.q0" : "D.DtAsDt";
            }
        } else if (ds.size() == 1 && rank_of(ds[0]) == n) {
            id = "D.Dn";
            p["h"] = n / 2;
        } else {
            bool equal = (ds.size() == 1 && ds[0]->field_degree == 2) || (ds.size() == 2 && rank_of(ds[0]) == rank_of(ds[1]));
            id = equal ? "D.DsDs" : "D.DsDt";
        }
    } else if (outer == 2 && type.family == 'D') {
        if (form.quasi_split) {
            id = ds.size() == 1 && rank_of(ds[0]) == n && ds[0]->twist == 2 ? "2D.Dt" : "2D.DsDt";
        } else {
            id = ds.empty() && fq.torus_dim == 1 ? "2D.As" : "2D.DtAsDt";
        }
    } else if (outer == 3) {
        id = tag_is("[1]") ? "3D4.1" : "3D4.-1";
    } else if (type.family == 'E' && n == 6 && outer == 1) {
        id = form.quasi_split ? "E6.E6" : (tag_is("[1]") ? "E6.3D4.1" : "E6.3D4.-1");
    } else if (type.family == 'E' && n == 6) {
        id = tag_is("[1]") ? "2E6.1" : "2E6.theta";
    } else if (type.family == 'E' && n == 7) {
        id = form.quasi_split ? "E7.E7" : (tag_is("[1]") ? "E7.E6.1" : "E7.E6.theta");
    } else {
        id = type.str();
    }
    m.row = &case_row(id);
    if (m.geometric.empty()) m.geometric = substitute(m.row->geometric, p);
    if (m.ns_allowed.empty()) {
        if (m.row->ns_rule == "tag") m.ns_allowed = degree_class[0].ns_candidates;
        else m.ns_allowed = parse_ns(m.row->ns_rule);
    }
    std::set<int> entry(degree_class[0].ns_candidates.begin(), degree_class[0].ns_candidates.end());
    std::vector<int> both;
    for (int v : m.ns_allowed)
        if (entry.count(v)) both.push_back(v);
    m.ns_allowed = both;
    return m;
}

}  // namespace cusp
