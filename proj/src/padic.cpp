#include "cusp/padic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cusp {

namespace {

IntPoly q_power(long long k) { return IntPoly::monomial(1, static_cast<std::size_t>(k)); }

IntPoly q_minus(long long k, long long eps) { return q_power(k) - IntPoly::constant(eps); }

std::string join(const std::vector<int>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::vector<int> sorted_image(const Perm& p, const std::vector<int>& nodes) {
    std::vector<int> out;
    for (int i : nodes) out.push_back(p[static_cast<std::size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
}

RatFunc q_ratio(const IntPoly& num, const IntPoly& den) { return RatFunc(num.inflate(2), den.inflate(2)); }

// Unipotent degree of the symbol (S, T) for a classical group with the given order polynomial.
RatFunc symbol_degree(const std::vector<int>& S, const std::vector<int>& T, const IntPoly& order_part, int c) {
    IntPoly num = order_part;
    IntPoly den = IntPoly::constant(1LL << c);
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j) num = num * (q_power(S[j]) - q_power(S[i]));
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = i + 1; j < T.size(); ++j) num = num * (q_power(T[j]) - q_power(T[i]));
    for (int s : S)
        for (int t : T) num = num * (q_power(s) + q_power(t));
    long long shift = 0;
    for (long long m = static_cast<long long>(S.size() + T.size()) - 2; m >= 2; m -= 2) shift += m * (m - 1) / 2;
    den = den * q_power(shift);
    for (const auto* side : {&S, &T})
        for (int s : *side)
            for (int i = 1; i <= s; ++i) den = den * q_minus(2 * i, 1);
    return q_ratio(num, den);
}

// Unipotent degree of GL_n for the partition, or of U_n after q -> -q.
RatFunc partition_degree(const std::vector<int>& lambda, bool unitary) {
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    long long nl = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) nl += static_cast<long long>(i) * lambda[i];
    IntPoly num = q_power(nl), den = IntPoly::constant(1);
    for (int i = 1; i <= n; ++i) num = num * q_minus(i, 1);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int leg = 0;
            for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++leg;
            den = den * q_minus(lambda[i] - j + leg, 1);
        }
    if (unitary) {
        num = num.alternate();
        den = den.alternate();
    }
    return q_ratio(num, den).abs_sign();
}

IntPoly phi(int m) { return cyclotomic_polynomial(static_cast<std::size_t>(m)); }

CuspidalEntry entry(std::string id, std::optional<RatFunc> degree, std::vector<int> ns, std::string cls) {
    return CuspidalEntry{std::move(id), std::move(degree), std::move(ns), std::move(cls)};
}

std::vector<CuspidalEntry> exceptional_entries(const CartanType& type, int twist) {
    std::vector<CuspidalEntry> out;
    auto tagged = [&](const std::string& label, const std::string& cls, int ns) {
        out.push_back(entry(type.str() + "[" + label + "]", std::nullopt, {ns}, type.str() + "[" + cls + "]"));
    };
    std::string prefix = twist > 1 ? std::to_string(twist) : "";
    if (type.family == 'E' && type.rank == 6 && twist == 1) {
        tagged("theta", "theta^+-", 3);
        tagged("theta^2", "theta^+-", 3);
    } else if (type.family == 'E' && type.rank == 6 && twist == 2) {
        tagged("1", "1", 1);
        tagged("theta", "theta^+-", 3);
        tagged("theta^2", "theta^+-", 3);
    } else if (type.family == 'E' && type.rank == 7) {
        tagged("xi", "+-xi", 4);
        tagged("-xi", "+-xi", 4);
    } else if (type.family == 'E' && type.rank == 8) {
        tagged("I,1", "I,1", 1);
        tagged("II,1", "II,1", 1);
        tagged("-1", "-1", 2);
        tagged("theta", "theta^+-", 3);
        tagged("theta^2", "theta^+-", 3);
        tagged("i", "+-i", 4);
        tagged("-i", "+-i", 4);
        for (int k = 1; k <= 4; ++k) tagged("zeta^" + std::to_string(k), "zeta", 5);
        tagged("-theta", "-theta^+-", 6);
        tagged("-theta^2", "-theta^+-", 6);
    } else if (type.family == 'F') {
        tagged("I,1", "I,1", 1);
        tagged("II,1", "II,1", 1);
        tagged("-1", "-1", 2);
        tagged("theta", "theta^+-", 3);
        tagged("theta^2", "theta^+-", 3);
        tagged("i", "+-i", 4);
        tagged("-i", "+-i", 4);
    } else if (type.family == 'G') {
        tagged("1", "1", 1);
        tagged("-1", "-1", 2);
        tagged("theta", "theta^+-", 3);
        tagged("theta^2", "theta^+-", 3);
        IntPoly base = q_power(1) * phi(1) * phi(1);
        out[0].degree = q_ratio(base * phi(6), IntPoly::constant(6));
        out[1].degree = q_ratio(base * phi(3), IntPoly::constant(2));
        out[2].degree = q_ratio(base * phi(2) * phi(2), IntPoly::constant(3));
        out[3].degree = out[2].degree;
    } else if (type.family == 'D' && type.rank == 4 && twist == 3) {
        tagged("1", "1", 1);
        tagged("-1", "-1", 2);
    }
    for (auto& e : out) {
        e.id = prefix + e.id;
        e.degree_class = prefix + e.degree_class;
    }
    return out;
}

std::vector<int> range_set(int count) {
    std::vector<int> s(static_cast<std::size_t>(count));
    std::iota(s.begin(), s.end(), 0);
    return s;
}

int integer_sqrt(int n) {
    int r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::string nodes_str(const UnramifiedGroup& G, const std::vector<int>& nodes) {
    std::string out = "{";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out += i ? "," : "";
        if (G.factor_count() > 1) out += std::to_string(G.factor_of(nodes[i])) + ":";
        out += std::to_string(G.local_index(nodes[i]));
    }
    return out + "}";
}

std::vector<InnerForm> enumerate_inner_forms(const UnramifiedGroup& G) {
    const FinAbGroup& W = G.omega_ad();
    FinAbGroup::Presented Q = coinvariants(W);
    std::map<FinAbGroup::Element, std::vector<FinAbGroup::Element>> cosets;
    for (const auto& x : W.elements()) cosets[Q.project(x)].push_back(x);

    std::vector<std::pair<std::vector<int>, InnerForm>> forms;
    for (auto& [key, members] : cosets) {
        std::vector<int> label;
        const FinAbGroup::Element* rep = nullptr;
        std::pair<bool, std::vector<int>> best{true, {}};
        for (const auto& x : members) {
            std::vector<int> nodes = G.special_nodes(x);
            if (label.empty() || nodes < label) label = nodes;
            std::pair<bool, std::vector<int>> k{W.apply_theta(x) != x, nodes};
            if (!rep || k < best) {
                rep = &x;
                best = k;
            }
        }
        InnerForm f;
        f.omega = *rep;
        f.quasi_split = std::all_of(label.begin(), label.end(), [](int j) { return j == 0; });
        f.name = f.quasi_split ? "1" : "w" + (G.factor_count() > 1 ? "(" + join(label, ",") + ")" : std::to_string(label[0]));
        f.frobenius = compose(G.omega_perm(f.omega), G.theta());
        f.transitive = perm_cycles(f.frobenius).size() == 1;
        forms.push_back({label, f});
    }
    std::sort(forms.begin(), forms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<InnerForm> out;
    for (auto& [label, f] : forms) out.push_back(std::move(f));
    return out;
}

std::string FiniteFactor::str() const {
    std::string s = (twist > 1 ? std::to_string(twist) : "") + type.str();
    if (field_degree > 1) s += "(q^" + std::to_string(field_degree) + ")";
    return s;
}

IntPoly finite_group_order(const CartanType& type, int twist) {
    IntPoly order = q_power(positive_root_count(type));
    if (type.family == 'D' && type.rank == 4 && twist == 3)
        return order * q_minus(2, 1) * q_minus(6, 1) * (q_power(8) + q_power(4) + IntPoly::constant(1));
    std::vector<int> d = invariant_degrees(type);
    for (std::size_t i = 0; i < d.size(); ++i) {
        long long eps = 1;
        if (twist == 2) {
            if (type.family == 'A') eps = d[i] % 2 ? -1 : 1;
            else if (type.family == 'D') eps = i + 1 == d.size() ? -1 : 1;
            else if (type.family == 'E') eps = d[i] % 2 ? -1 : 1;
            else throw std::invalid_argument("no twisted form of " + type.str());
        } else if (twist != 1) {
            throw std::invalid_argument("no twisted form of " + type.str());
        }
        order = order * q_minus(d[i], eps);
    }
    return order;
}

IntPoly FiniteQuotient::order() const {
    IntPoly out = torus_order;
    for (const auto& f : factors) out = out * finite_group_order(f.type, f.twist).inflate(static_cast<std::size_t>(f.field_degree));
    return out;
}

std::string FiniteQuotient::str() const {
    std::string s;
    for (const auto& f : factors) s += (s.empty() ? "" : " x ") + f.str();
    if (torus_dim > 0) s += (s.empty() ? "" : " x ") + std::string("T") + std::to_string(torus_dim);
    return s.empty() ? "1" : s;
}

FiniteQuotient finite_quotient(const UnramifiedGroup& G, const Perm& F, const std::vector<int>& J,
                               const IntPoly& central_torus_order, int central_torus_dim) {
    FiniteQuotient fq;
    auto comps = connected_components(G.cartan(), J);
    std::map<int, std::size_t> comp_of;
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int i : comps[c]) comp_of[i] = c;
    std::vector<bool> done(comps.size(), false);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (done[c]) continue;
        FiniteFactor f;
        std::size_t cur = c;
        Perm step = identity_perm(G.node_count());
        do {
            done[cur] = true;
            f.components.push_back(comps[cur]);
            step = compose(F, step);
            cur = comp_of.at(step[static_cast<std::size_t>(comps[c][0])]);
        } while (cur != c);
        f.field_degree = static_cast<int>(f.components.size());
        IntMatrix sub = submatrix(G.cartan(), comps[c]);
        f.type = identify_cartan(sub).value();
        Perm local(comps[c].size());
        for (std::size_t i = 0; i < comps[c].size(); ++i) {
            int image = step[static_cast<std::size_t>(comps[c][i])];
            local[i] = static_cast<int>(std::find(comps[c].begin(), comps[c].end(), image) - comps[c].begin());
        }
        f.twist = static_cast<int>(perm_order(local));
        fq.dimension += static_cast<int>(2 * positive_root_count(f.type) * f.field_degree);
        fq.factors.push_back(f);
    }

    std::set<int> in_J(J.begin(), J.end());
    IntPoly torus = IntPoly::constant(1), factors = IntPoly::constant(1);
    int outside = 0;
    for (const auto& cyc : perm_cycles(F)) {
        if (in_J.count(cyc[0])) continue;
        outside += static_cast<int>(cyc.size());
        torus = torus * xn_minus_one(cyc.size());
    }
    for (const auto& cyc : perm_cycles(G.factor_theta())) factors = factors * xn_minus_one(cyc.size());
    if (!divide_exact(torus, factors, fq.torus_order)) throw std::logic_error("torus order is not a polynomial");
    fq.torus_order = fq.torus_order * central_torus_order;
    fq.torus_dim = outside - G.factor_count() + central_torus_dim;
    fq.dimension += G.semisimple_rank() + central_torus_dim;
    return fq;
}

CuspidalDatum cuspidal_unipotent_data(const CartanType& type, int twist, int field_degree) {
    CuspidalDatum d;
    const int n = type.rank;
    switch (type.family) {
        case 'A':
            if (twist == 2) {
                int s = 0;
                while ((s + 1) * (s + 2) / 2 <= n + 1) ++s;
                if (s * (s + 1) / 2 == n + 1) {
                    std::vector<int> lambda;
                    for (int i = s; i >= 1; --i) lambda.push_back(i);
                    d.entries.push_back(entry("2A" + std::to_string(n) + "[" + join(lambda, ",") + "]",
                                              partition_degree(lambda, true), {1, 2}, "2A" + std::to_string(n)));
                }
            }
            break;
        case 'B':
        case 'C': {
            int x = 0;
            while ((x + 1) * (x + 2) <= n) ++x;
            if (x * (x + 1) == n) {
                auto S = range_set(2 * x + 1);
                IntPoly order = IntPoly::constant(1);
                for (int i = 1; i <= n; ++i) order = order * q_minus(2 * i, 1);
                std::string id = type.str() + "[" + join(S, ",") + ";]";
                d.entries.push_back(entry(id, symbol_degree(S, {}, order, x), {1, 2}, id));
            }
            break;
        }
        case 'D': {
            int y = integer_sqrt(n);
            if (y * y == n && twist != 3 && (y % 2 == 0) == (twist == 1)) {
                auto S = range_set(2 * y);
                IntPoly order = IntPoly::constant(1);
                for (int i = 1; i < n; ++i) order = order * q_minus(2 * i, 1);
                order = order * q_minus(n, twist == 1 ? 1 : -1);
                std::string id = (twist == 2 ? "2" : "") + type.str() + "[" + join(S, ",") + ";]";
                d.entries.push_back(entry(id, symbol_degree(S, {}, order, y - 1), {1, 2}, id));
            } else if (n == 4 && twist == 3) {
                d.entries = exceptional_entries(type, twist);
            }
            break;
        }
        default:
            d.entries = exceptional_entries(type, twist);
    }
    if (field_degree > 1)
        for (auto& e : d.entries) {
            if (e.degree) e.degree = e.degree->inflate(static_cast<std::size_t>(field_degree));
            e.id += "(q^" + std::to_string(field_degree) + ")";
            e.degree_class += "(q^" + std::to_string(field_degree) + ")";
        }
    return d;
}

CuspidalDatum cuspidal_unipotent_data(const FiniteQuotient& quotient) {
    CuspidalDatum out;
    out.entries.push_back(entry("1", RatFunc(1), {1}, "1"));
    for (const auto& f : quotient.factors) {
        CuspidalDatum part = cuspidal_unipotent_data(f.type, f.twist, f.field_degree);
        if (!part.exists()) return {};
        std::vector<CuspidalEntry> next;
        for (const auto& a : out.entries)
            for (const auto& b : part.entries) {
                CuspidalEntry e;
                e.id = a.id == "1" ? b.id : a.id + "x" + b.id;
                e.degree_class = a.degree_class == "1" ? b.degree_class : a.degree_class + "x" + b.degree_class;
                if (a.degree && b.degree) e.degree = *a.degree * *b.degree;
                std::set<int> ns;
                for (int u : a.ns_candidates)
                    for (int v : b.ns_candidates) ns.insert(std::lcm(u, v));
                e.ns_candidates.assign(ns.begin(), ns.end());
                next.push_back(e);
            }
        out.entries = std::move(next);
    }
    return out;
}

std::vector<std::vector<CuspidalEntry>> degree_classes(const CuspidalDatum& datum) {
    std::vector<std::vector<CuspidalEntry>> out;
    for (const auto& e : datum.entries) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g[0].degree_class == e.degree_class; });
        if (it == out.end()) out.push_back({e});
        else it->push_back(e);
    }
    return out;
}

std::vector<ParahoricClass> enumerate_parahoric_supports(const UnramifiedGroup& G, const InnerForm& form) {
    const FinAbGroup& W = G.omega_ad();
    FinAbGroup::Subgroup inv_ad = W.invariants();
    FinAbGroup::Subgroup inv = intersect(G.omega(), inv_ad);
    std::set<std::vector<int>> seen;
    std::vector<ParahoricClass> out;
    for (auto cyc : perm_cycles(form.frobenius)) {
        std::sort(cyc.begin(), cyc.end());
        if (seen.count(cyc)) continue;
        std::set<int> hit;
        for (int i : cyc) hit.insert(G.factor_of(i));
        if (static_cast<int>(hit.size()) != G.factor_count()) continue;

        std::set<std::vector<int>> cls;
        for (const auto& x : inv_ad) cls.insert(sorted_image(G.omega_perm(x), cyc));
        seen.insert(cls.begin(), cls.end());

        ParahoricClass pc;
        pc.orbit = *cls.begin();
        pc.association.assign(cls.begin(), cls.end());
        std::set<int> o(pc.orbit.begin(), pc.orbit.end());
        for (int i = 0; i < G.node_count(); ++i)
            if (!o.count(i)) pc.J.push_back(i);
        pc.quotient = finite_quotient(G, form.frobenius, pc.J);
        pc.cuspidal = cuspidal_unipotent_data(pc.quotient);
        if (!pc.cuspidal.exists()) continue;
        for (const auto& x : inv_ad)
            if (sorted_image(G.omega_perm(x), pc.orbit) == pc.orbit) {
                pc.stabilizer_ad.insert(x);
                if (inv.count(x)) pc.stabilizer.insert(x);
            }
        std::set<std::vector<int>> covered;
        pc.g_prime = 0;
        for (const auto& member : pc.association) {
            if (covered.count(member)) continue;
            ++pc.g_prime;
            for (const auto& x : inv) covered.insert(sorted_image(G.omega_perm(x), member));
        }
        out.push_back(std::move(pc));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.orbit < b.orbit; });
    return out;
}

RatFunc parahoric_volume(const FiniteQuotient& quotient) {
    return RatFunc(quotient.order().inflate(2)) * RatFunc::t_power(-quotient.dimension);
}

FDeg formal_degree(const ParahoricClass& pc, const CuspidalEntry& e) {
    if (!e.degree) throw DegreeUnavailable("degree of " + e.id + " is not available");
    FDeg f;
    f.dim_sigma = *e.degree;
    f.stabilizer_order = static_cast<long long>(pc.stabilizer.size());
    f.volume = parahoric_volume(pc.quotient);
    f.value = f.dim_sigma / (RatFunc(f.stabilizer_order) * f.volume);
    // Induced from the normalizer: vol(N) = [N : P] vol(P).
    f.normalizer_form = f.dim_sigma / (f.volume * RatFunc(f.stabilizer_order));
    return f;
}

}  // namespace cusp
