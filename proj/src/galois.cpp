#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/LU>

#include "cusp/galois.hpp"

namespace cusp {

namespace {

IntMatrix chain(int nodes) {
    IntMatrix M = IntMatrix::Zero(nodes, nodes);
    for (int i = 0; i < nodes; ++i) {
        M(i, i) = 2;
        if (i + 1 < nodes) M(i, i + 1) = M(i + 1, i) = -1;
    }
    return M;
}

// Chain with short nodes at both ends.
IntMatrix twisted_d(int nodes) {
    IntMatrix M = chain(nodes);
    M(0, 1) = -2;
    M(nodes - 1, nodes - 2) = -2;
    return M;
}

IntMatrix twisted_a_even(int l) {
    if (l == 1) return IntMatrix{{2, -4}, {-1, 2}};
    IntMatrix M = chain(l + 1);
    M(0, 1) = -2;
    M(l - 1, l) = -2;
    return M;
}

IntMatrix twisted_a_odd(int l) {
    IntMatrix M = IntMatrix::Zero(l + 1, l + 1);
    for (int i = 0; i <= l; ++i) M(i, i) = 2;
    M(0, 2) = M(2, 0) = M(1, 2) = M(2, 1) = -1;
    for (int i = 2; i + 1 <= l; ++i) M(i, i + 1) = M(i + 1, i) = -1;
    M(l - 1, l) = -2;
    return M;
}

CartanType dual_of(const CartanType& t) {
    if (t.family == 'B') return {'C', t.rank};
    if (t.family == 'C') return {'B', t.rank};
    return t;
}

struct PatternItem {
    char family;
    int rank;  // -1 for *, -2 for ?
};

std::vector<PatternItem> parse_pattern(const std::string& pattern) {
    std::vector<PatternItem> items;
    std::size_t i = 0;
    while (i < pattern.size()) {
        char family = pattern[i++];
        if (i >= pattern.size()) throw std::invalid_argument("bad pattern " + pattern);
        if (pattern[i] == '*' || pattern[i] == '?') {
            items.push_back({family, pattern[i] == '*' ? -1 : -2});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j]))) ++j;
        if (j == i) throw std::invalid_argument("bad pattern " + pattern);
        items.push_back({family, std::stoi(pattern.substr(i, j - i))});
        i = j;
    }
    return items;
}

bool match_from(const std::vector<PatternItem>& items, std::size_t k, std::vector<CartanType>& chosen, int budget,
                const std::vector<CartanType>& target) {
    if (k == items.size()) return budget == 0 && canonical_types(chosen) == target;
    const PatternItem& it = items[k];
    // D1 is a torus, so a nonempty D item starts at rank 2.
    int lo = it.rank >= 0 ? it.rank : (it.rank == -1 ? (it.family == 'D' ? 2 : 1) : 0);
    int hi = it.rank >= 0 ? it.rank : budget;
    for (int r = lo; r <= hi && r <= budget; ++r) {
        chosen.push_back({it.family, r});
        bool ok = match_from(items, k + 1, chosen, budget - r, target);
        chosen.pop_back();
        if (ok) return true;
    }
    return false;
}

Cyclo root_of_unity(const WeightString& w) { return Cyclo::zeta(w.order, w.exponent); }

WeightString normalized(long long order, long long exponent, int h) {
    exponent = ((exponent % order) + order) % order;
    long long g = std::gcd(order, exponent);
    if (exponent == 0) return {1, 0, h};
    return {order / g, exponent / g, h};
}

IntPoly to_integer_poly(const CycloPoly& p) {
    std::vector<long long> c;
    for (const auto& x : p.coeffs()) {
        if (!x.is_rational()) throw Unavailable("local factor is not defined over Q");
        auto [num, den] = x.to_rational();
        if (den != 1) throw Unavailable("local factor is not integral");
        c.push_back(num);
    }
    return IntPoly(std::move(c));
}

// 1 / P(1/t) for P a polynomial in u = 1/t.
RatFunc reciprocal_in_inverse(const IntPoly& P) {
    std::vector<long long> rev(P.coeffs().rbegin(), P.coeffs().rend());
    return RatFunc::t_power(P.degree()) / RatFunc(IntPoly(std::move(rev)));
}

RatFunc l_factor(const std::vector<WeightString>& w, int s2) {
    // Full Galois orbits contribute cyclotomic polynomials; the rest is multiplied out over the cyclotomic field.
    std::map<std::pair<int, long long>, std::map<long long, long long>> groups;
    for (const auto& x : w) {
        int shift = s2 + x.h;
        if (shift < 0) throw std::invalid_argument("negative shift in L-factor");
        ++groups[{shift, x.order}][x.exponent];
    }
    IntPoly rational = IntPoly::constant(1);
    CycloPoly P = CycloPoly::constant(Cyclo(1));
    for (const auto& [key, counts] : groups) {
        const auto [shift, order] = key;
        long long full = counts.begin()->second;
        for (const auto& [e, c] : counts) full = std::min(full, c);
        long long units = 0;
        for (long long k = 0; k < order; ++k) units += std::gcd(k, order) == 1;
        if (static_cast<long long>(counts.size()) != units) full = 0;
        if (full > 0) {
            IntPoly f = cyclotomic_polynomial(static_cast<std::size_t>(order));
            if (order == 1) f = IntPoly::constant(-1) * f;
            f = f.pow(static_cast<unsigned>(full));
            rational = rational * (shift == 0 ? IntPoly::constant(f.eval(1)) : f.inflate(static_cast<std::size_t>(shift)));
        }
        for (const auto& [e, c] : counts)
            for (long long k = full; k < c; ++k)
                P = P * (CycloPoly::constant(Cyclo(1)) -
                         CycloPoly::monomial(root_of_unity({order, e, 0}), static_cast<std::size_t>(shift)));
    }
    return reciprocal_in_inverse(rational * to_integer_poly(P));
}

}  // namespace

DualDiagram dual_affine_diagram(const CartanType& type, int outer_order) {
    DualDiagram d;
    d.dual_type = dual_of(type);
    d.twist = outer_order;
    const int n = type.rank;
    if (outer_order == 1) {
        d.cartan = affine_cartan_matrix(d.dual_type);
        d.name = d.dual_type.str() + "^(1)";
    } else if (outer_order == 2 && type.family == 'A' && n % 2 == 0) {
        d.cartan = twisted_a_even(n / 2);
        d.name = "A" + std::to_string(n) + "^(2)";
    } else if (outer_order == 2 && type.family == 'A' && n == 3) {
        d.cartan = twisted_d(3);
        d.name = "D3^(2)";
    } else if (outer_order == 2 && type.family == 'A' && n >= 5) {
        d.cartan = twisted_a_odd((n + 1) / 2);
        d.name = "A" + std::to_string(n) + "^(2)";
    } else if (outer_order == 2 && type.family == 'D') {
        d.cartan = twisted_d(n);
        d.name = "D" + std::to_string(n) + "^(2)";
    } else if (outer_order == 3 && type.family == 'D' && n == 4) {
        d.cartan = IntMatrix{{2, -1, 0}, {-1, 2, -3}, {0, -1, 2}};
        d.name = "D4^(3)";
    } else if (outer_order == 2 && type.family == 'E' && n == 6) {
        d.cartan = chain(5);
        d.cartan(2, 3) = -2;
        d.name = "E6^(2)";
    } else {
        throw std::invalid_argument("no dual diagram for " + type.str() + " with twist " + std::to_string(outer_order));
    }
    IntVector v = null_vector(d.cartan);
    d.labels.assign(v.data(), v.data() + v.size());
    return d;
}

std::vector<CartanType> canonical_types(const std::vector<CartanType>& types) {
    std::vector<CartanType> out;
    for (CartanType t : types) {
        if (t.rank == 0) continue;
        if (t.family == 'D' && t.rank == 1) continue;
        if ((t.family == 'B' || t.family == 'C') && t.rank == 1) t = {'A', 1};
        if (t.family == 'C' && t.rank == 2) t = {'B', 2};
        if (t.family == 'D' && t.rank == 2) {
            out.push_back({'A', 1});
            t = {'A', 1};
        }
        if (t.family == 'D' && t.rank == 3) t = {'A', 3};
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CartanType> deletion_type(const DualDiagram& diagram, int node) {
    std::vector<int> rest;
    for (int i = 0; i < diagram.cartan.rows(); ++i)
        if (i != node) rest.push_back(i);
    std::vector<CartanType> types;
    for (const auto& comp : connected_components(diagram.cartan, rest)) {
        auto t = identify_cartan(submatrix(diagram.cartan, comp));
        if (!t) throw std::logic_error("unrecognized component in " + diagram.name);
        types.push_back(*t);
    }
    return canonical_types(types);
}

std::string types_str(const std::vector<CartanType>& types) {
    if (types.empty()) return "1";
    std::string s;
    for (const auto& t : types) s += t.str();
    return s;
}

bool matches_pattern(const std::string& pattern, const std::vector<CartanType>& types) {
    if (pattern == "any") return true;
    auto target = canonical_types(types);
    int total = 0;
    for (const auto& t : target) total += t.rank;
    auto items = parse_pattern(pattern);
    std::vector<CartanType> chosen;
    // Rank 0 and rank 1 D factors vanish, so the budget can exceed the visible rank by those.
    for (int budget = total; budget <= total + static_cast<int>(items.size()); ++budget)
        if (match_from(items, 0, chosen, budget, target)) return true;
    return false;
}

std::vector<int> kac_candidates(const DualDiagram& diagram, const std::string& pattern, const std::vector<int>& ns_allowed) {
    std::vector<int> out;
    for (int v = 0; v < diagram.cartan.rows(); ++v) {
        long long label = diagram.labels[static_cast<std::size_t>(v)];
        if (std::find(ns_allowed.begin(), ns_allowed.end(), label) == ns_allowed.end()) continue;
        if (matches_pattern(pattern, deletion_type(diagram, v))) out.push_back(v);
    }
    return out;
}

UnramifiedParam make_param(const DualDiagram& diagram, int node) {
    UnramifiedParam p;
    p.node = node;
    p.ns = diagram.labels.at(static_cast<std::size_t>(node));
    p.kac_coordinates.assign(diagram.labels.size(), 0);
    p.kac_coordinates[static_cast<std::size_t>(node)] = 1;
    p.centralizer = deletion_type(diagram, node);
    bool all_a = std::all_of(p.centralizer.begin(), p.centralizer.end(), [](const CartanType& t) { return t.family == 'A'; });
    p.unipotent_class = all_a ? "regular" : "distinguished";
    try {
        p.weights = adjoint_weights(diagram, node);
    } catch (const Unavailable&) {
    }
    return p;
}

std::vector<WeightString> adjoint_weights(const DualDiagram& diagram, int node) {
    const CartanType& t = diagram.dual_type;
    if (diagram.twist != 1) throw Unavailable("weights are encoded for untwisted duals only");
    if (t.family != 'A' && t.family != 'D' && t.family != 'E') throw Unavailable("weights are encoded for simply laced duals only");
    auto cent = deletion_type(diagram, node);
    if (!std::all_of(cent.begin(), cent.end(), [](const CartanType& c) { return c.family == 'A'; }))
        throw Unavailable("centralizer is not of type A");
    const int r = t.rank;
    if (r == 0) return {};
    const long long a = diagram.labels.at(static_cast<std::size_t>(node));
    IntMatrix A = cartan_matrix(t);
    auto pos = positive_roots(A);
    IntVector theta = highest_root(A);

    Eigen::MatrixXd gamma(r, r);
    int col = 0;
    for (int i = 0; i < r; ++i) {
        if (i + 1 == node) continue;
        gamma.col(col) = Eigen::VectorXd::Unit(r, i);
        ++col;
    }
    if (node != 0) gamma.col(col) = -theta.cast<double>();
    Eigen::VectorXd f = gamma.transpose().partialPivLu().solve(Eigen::VectorXd::Ones(r));

    std::map<long long, std::map<int, long long>> counts;
    auto add_root = [&](const IntVector& beta) {
        long long c = node == 0 ? 0 : beta(node - 1);
        long long e = ((c % a) + a) % a;
        double h = 2.0 * f.dot(beta.cast<double>());
        long long hr = std::llround(h);
        if (std::abs(h - static_cast<double>(hr)) > 1e-6) throw std::logic_error("non-integral sl2 weight");
        ++counts[e][static_cast<int>(hr)];
    };
    for (const auto& beta : pos) {
        add_root(beta);
        add_root(-beta);
    }
    counts[0][0] += r;

    std::vector<WeightString> out;
    for (const auto& [e, byh] : counts)
        for (const auto& [h, c] : byh) {
            if (h < 0) continue;
            auto it = byh.find(h + 2);
            long long strings = c - (it == byh.end() ? 0 : it->second);
            for (long long k = 0; k < strings; ++k) out.push_back(normalized(a, e, h));
        }
    std::sort(out.begin(), out.end());
    return out;
}

long long weights_dimension(const std::vector<WeightString>& w) {
    long long d = 0;
    for (const auto& x : w) d += x.h + 1;
    return d;
}

bool inversion_closed(const std::vector<WeightString>& w) {
    std::vector<WeightString> inv;
    for (const auto& x : w) inv.push_back(normalized(x.order, -x.exponent, x.h));
    std::vector<WeightString> a = w;
    std::sort(a.begin(), a.end());
    std::sort(inv.begin(), inv.end());
    return a == inv;
}

WDLocalFactors local_factors(const std::vector<WeightString>& w, int s2, int ord_psi) {
    WDLocalFactors out;
    out.L_s = l_factor(w, s2);
    out.L_dual = l_factor(w, 2 - s2);

    // Sign as a fraction of a full turn.
    long long den = 2;
    for (const auto& x : w) den = std::lcm(den, x.order);
    long long turn = 0;
    long long conductor = 0;
    for (const auto& x : w) {
        long long k = (x.h + 1) * ord_psi + x.h;
        turn += x.exponent * k * (den / x.order) + x.h * (den / 2);
        conductor += x.h;
    }
    turn = ((turn % den) + den) % den;
    long long sign;
    if (turn == 0) sign = 1;
    else if (2 * turn == den) sign = -1;
    else throw Unavailable("epsilon factor is not real");
    long long exponent = (ord_psi * weights_dimension(w) + conductor) * (1 - s2);
    out.eps = RatFunc(sign) * RatFunc::t_power(exponent);
    out.gamma = out.eps * out.L_dual / out.L_s;
    out.gamma_abs = out.gamma.abs_sign();
    return out;
}

RatFunc gamma_abs_at_zero(const std::vector<WeightString>& w, int ord_psi) { return local_factors(w, 0, ord_psi).gamma_abs; }

HiiResult hii_check(const RatFunc& fdeg, const RatFunc& gamma_abs, long long dim_rho, long long s_sharp) {
    HiiResult r;
    r.lhs = fdeg;
    r.rhs = RatFunc(dim_rho) * gamma_abs / RatFunc(s_sharp);
    r.holds = r.lhs == r.rhs;
    return r;
}

}  // namespace cusp
