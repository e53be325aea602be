#include "cusp/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cusp {

namespace {

using Element = FinAbGroup::Element;
using Subgroup = FinAbGroup::Subgroup;

void reduce_rows(IntMatrix& M, const std::vector<long long>& orders) {
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) = floor_mod(M(i, j), orders[static_cast<std::size_t>(i)]);
}

IntMatrix mat_mul_reduced(const IntMatrix& A, const IntMatrix& B, const std::vector<long long>& orders) {
    IntMatrix C = IntMatrix::Zero(A.rows(), B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            long long s = 0;
            for (Eigen::Index k = 0; k < A.cols(); ++k) s = checked_add(s, checked_mul(A(i, k), B(k, j)));
            C(i, j) = orders.empty() ? s : floor_mod(s, orders[static_cast<std::size_t>(i)]);
        }
    return C;
}

Element mat_apply(const IntMatrix& M, const Element& x) {
    Element y(static_cast<std::size_t>(M.rows()), 0);
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            y[static_cast<std::size_t>(i)] = checked_add(y[static_cast<std::size_t>(i)], checked_mul(M(i, j), x[static_cast<std::size_t>(j)]));
    return y;
}

std::vector<Element> minimal_generators(const FinAbGroup& G, const Subgroup& H) {
    std::vector<Element> gens;
    Subgroup span = G.trivial_subgroup();
    // Prefer elements of large order so that few generators are needed.
    std::vector<Element> sorted(H.begin(), H.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const Element& a, const Element& b) { return G.element_order(a) > G.element_order(b); });
    for (const auto& h : sorted) {
        if (span.count(h)) continue;
        gens.push_back(h);
        span = G.generated_by(gens);
        if (span.size() == H.size()) break;
    }
    return gens;
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<long long> orders, IntMatrix theta) : orders_(std::move(orders)), theta_(std::move(theta)) {
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (orders_[i] <= 1) throw std::invalid_argument("group invariants must exceed 1");
        if (i > 0 && orders_[i] % orders_[i - 1] != 0) throw std::invalid_argument("group invariants must divide each other");
    }
    if (theta_.rows() != static_cast<Eigen::Index>(rank()) || theta_.cols() != static_cast<Eigen::Index>(rank()))
        throw std::invalid_argument("automorphism matrix has wrong shape");
    reduce_rows(theta_, orders_);
}

FinAbGroup::FinAbGroup(std::vector<long long> orders)
    : FinAbGroup(orders, IntMatrix::Identity(static_cast<Eigen::Index>(orders.size()), static_cast<Eigen::Index>(orders.size()))) {}

FinAbGroup::Presented FinAbGroup::from_presentation(const IntMatrix& relations, const IntMatrix& theta_lift) {
    const Eigen::Index n = relations.rows();
    SmithForm s = smith_normal_form(relations);
    std::vector<Eigen::Index> kept;
    std::vector<long long> orders;
    for (Eigen::Index i = 0; i < n; ++i) {
        long long d = i < s.D.cols() ? s.D(i, i) : 0;
        if (d == 0) throw std::invalid_argument("presentation defines an infinite group");
        if (d > 1) {
            kept.push_back(i);
            orders.push_back(d);
        }
    }
    auto k = static_cast<Eigen::Index>(kept.size());
    IntMatrix P(k, n), S(n, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        P.row(a) = s.U.row(kept[static_cast<std::size_t>(a)]);
        S.col(a) = s.Uinv.col(kept[static_cast<std::size_t>(a)]);
    }
    reduce_rows(P, orders);
    IntMatrix theta = mat_mul_reduced(mat_mul_reduced(P, theta_lift, orders), S, orders);
    return Presented{FinAbGroup(orders, theta), P, S};
}

long long FinAbGroup::size() const {
    long long n = 1;
    for (long long d : orders_) n = checked_mul(n, d);
    return n;
}

FinAbGroup::Element FinAbGroup::reduce(const Element& x) const {
    Element y(rank());
    for (std::size_t i = 0; i < rank(); ++i) y[i] = floor_mod(x[i], orders_[i]);
    return y;
}

FinAbGroup::Element FinAbGroup::add(const Element& x, const Element& y) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = floor_mod(x[i] + y[i], orders_[i]);
    return z;
}

FinAbGroup::Element FinAbGroup::neg(const Element& x) const { return scale(-1, x); }

FinAbGroup::Element FinAbGroup::scale(long long k, const Element& x) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = floor_mod(checked_mul(floor_mod(k, orders_[i]), x[i]), orders_[i]);
    return z;
}

FinAbGroup::Element FinAbGroup::apply_theta(const Element& x, long long power) const {
    long long ord = theta_order();
    power = floor_mod(power, ord);
    Element y = x;
    for (long long p = 0; p < power; ++p) y = reduce(mat_apply(theta_, y));
    return y;
}

long long FinAbGroup::element_order(const Element& x) const {
    long long o = 1;
    for (std::size_t i = 0; i < rank(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], x[i]));
    return o;
}

long long FinAbGroup::theta_order() const {
    IntMatrix P = theta_;
    IntMatrix I = IntMatrix::Identity(static_cast<Eigen::Index>(rank()), static_cast<Eigen::Index>(rank()));
    reduce_rows(I, orders_);
    for (long long k = 1;; ++k) {
        if (P == I) return k;
        P = mat_mul_reduced(theta_, P, orders_);
        if (k > 1000000) throw std::runtime_error("automorphism has no finite order");
    }
}

std::vector<FinAbGroup::Element> FinAbGroup::elements() const {
    std::vector<Element> out;
    Element x = zero();
    while (true) {
        out.push_back(x);
        std::size_t i = rank();
        while (i-- > 0) {
            if (++x[i] < orders_[i]) break;
            x[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

FinAbGroup::Subgroup FinAbGroup::everything() const {
    auto e = elements();
    return Subgroup(e.begin(), e.end());
}

FinAbGroup::Subgroup FinAbGroup::generated_by(const std::vector<Element>& gens) const {
    Subgroup S{zero()};
    std::vector<Element> frontier{zero()};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Element y = add(x, reduce(g));
                if (S.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return S;
}

FinAbGroup::Subgroup FinAbGroup::invariants() const {
    Subgroup S;
    for (const auto& x : elements())
        if (apply_theta(x) == x) S.insert(x);
    return S;
}

FinAbGroup::Subgroup FinAbGroup::theta_commutator() const {
    Subgroup S;
    for (const auto& x : elements()) S.insert(add(x, neg(apply_theta(x))));
    return S;
}

bool FinAbGroup::is_theta_stable(const Subgroup& H) const {
    for (const auto& h : H)
        if (!H.count(apply_theta(h))) return false;
    return true;
}

FinAbGroup FinAbGroup::dual() const {
    long long ord = theta_order();
    IntMatrix inv = IntMatrix::Identity(static_cast<Eigen::Index>(rank()), static_cast<Eigen::Index>(rank()));
    for (long long k = 0; k < ord - 1; ++k) inv = mat_mul_reduced(theta_, inv, orders_);
    IntMatrix D(static_cast<Eigen::Index>(rank()), static_cast<Eigen::Index>(rank()));
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) {
            long long a = checked_mul(inv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)), orders_[i]);
            if (a % orders_[j] != 0) throw std::logic_error("automorphism matrix is not well defined");
            D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a / orders_[j];
        }
    return FinAbGroup(orders_, D);
}

long long FinAbGroup::pairing(const Element& x, const Element& chi) const {
    long long E = exponent(), s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        s = floor_mod(s + checked_mul(checked_mul(x[i], chi[i]) % E, E / orders_[i]), E);
    return s;
}

FinAbGroup::Subgroup FinAbGroup::annihilator(const Subgroup& H) const {
    Subgroup A;
    for (const auto& chi : elements()) {
        bool ok = true;
        for (const auto& h : H)
            if (pairing(h, chi) != 0) {
                ok = false;
                break;
            }
        if (ok) A.insert(chi);
    }
    return A;
}

FinAbGroup::Element FinAbGroup::Presented::project(const Element& x) const { return group.reduce(mat_apply(projection, x)); }

FinAbGroup::Element FinAbGroup::Embedded::image(const FinAbGroup& ambient, const Element& x) const {
    return ambient.reduce(mat_apply(embedding, x));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    Subgroup r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.begin()));
    return r;
}

Subgroup sum(const FinAbGroup& G, const Subgroup& a, const Subgroup& b) {
    std::vector<Element> gens(a.begin(), a.end());
    gens.insert(gens.end(), b.begin(), b.end());
    return G.generated_by(gens);
}

long long index(const Subgroup& big, const Subgroup& small) {
    if (small.empty() || big.size() % small.size() != 0) throw std::invalid_argument("not a subgroup");
    return static_cast<long long>(big.size() / small.size());
}

bool is_subset(const Subgroup& a, const Subgroup& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

FinAbGroup::Presented quotient(const FinAbGroup& G, const Subgroup& H) {
    if (!G.is_theta_stable(H)) throw std::invalid_argument("quotient by a subgroup that is not theta-stable");
    auto gens = minimal_generators(G, H);
    auto k = static_cast<Eigen::Index>(G.rank());
    IntMatrix R = IntMatrix::Zero(k, k + static_cast<Eigen::Index>(gens.size()));
    for (Eigen::Index i = 0; i < k; ++i) R(i, i) = G.orders()[static_cast<std::size_t>(i)];
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (Eigen::Index i = 0; i < k; ++i) R(i, k + static_cast<Eigen::Index>(g)) = gens[g][static_cast<std::size_t>(i)];
    if (k == 0) return FinAbGroup::Presented{FinAbGroup(), IntMatrix(0, 0), IntMatrix(0, 0)};
    return FinAbGroup::from_presentation(R, G.theta());
}

FinAbGroup::Presented coinvariants(const FinAbGroup& G) { return quotient(G, G.theta_commutator()); }

FinAbGroup::Embedded to_group(const FinAbGroup& G, const Subgroup& H) {
    auto gens = minimal_generators(G, H);
    const auto s = static_cast<Eigen::Index>(gens.size());
    const auto k = static_cast<Eigen::Index>(G.rank());
    if (s == 0) return FinAbGroup::Embedded{FinAbGroup(), IntMatrix(k, 0)};
    IntMatrix A = IntMatrix::Zero(k, s + k);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < k; ++i) A(i, j) = gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < k; ++i) A(i, s + i) = G.orders()[static_cast<std::size_t>(i)];
    SmithForm snf = smith_normal_form(A);
    Eigen::Index r = 0;
    while (r < std::min(snf.D.rows(), snf.D.cols()) && snf.D(r, r) != 0) ++r;
    IntMatrix rel = snf.V.block(0, r, s, s + k - r);

    std::vector<long long> gen_orders;
    for (const auto& g : gens) gen_orders.push_back(G.element_order(g));
    IntMatrix T = IntMatrix::Zero(s, s);
    for (Eigen::Index j = 0; j < s; ++j) {
        Element target = G.apply_theta(gens[static_cast<std::size_t>(j)]);
        std::vector<long long> c(static_cast<std::size_t>(s), 0);
        bool found = false;
        while (!found) {
            Element v = G.zero();
            for (Eigen::Index i = 0; i < s; ++i) v = G.add(v, G.scale(c[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(i)]));
            if (v == target) {
                found = true;
                break;
            }
            Eigen::Index i = s;
            while (i-- > 0) {
                if (++c[static_cast<std::size_t>(i)] < gen_orders[static_cast<std::size_t>(i)]) break;
                c[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
        if (!found) throw std::invalid_argument("subgroup is not theta-stable");
        for (Eigen::Index i = 0; i < s; ++i) T(i, j) = c[static_cast<std::size_t>(i)];
    }
    auto pres = FinAbGroup::from_presentation(rel, T);
    IntMatrix Hmat = A.block(0, 0, k, s);
    IntMatrix emb = Hmat * pres.section;
    reduce_rows(emb, G.orders());
    return FinAbGroup::Embedded{pres.group, emb};
}

}  // namespace cusp
