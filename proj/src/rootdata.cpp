#include "cusp/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <regex>
#include <set>
#include <stdexcept>

namespace cusp {

Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return q;
}

Perm perm_power(const Perm& p, long long k) {
    long long ord = perm_order(p);
    k = floor_mod(k, ord);
    Perm r = identity_perm(static_cast<int>(p.size()));
    for (long long i = 0; i < k; ++i) r = compose(p, r);
    return r;
}

long long perm_order(const Perm& p) {
    long long o = 1;
    for (const auto& c : perm_cycles(p)) o = std::lcm(o, static_cast<long long>(c.size()));
    return o;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        for (auto j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = p[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            c.push_back(j);
        }
        out.push_back(c);
    }
    return out;
}

IntMatrix cartan_matrix(const CartanType& t) {
    const int n = t.rank;
    IntMatrix A = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = 2;
    auto bond = [&](int i, int j) {
        A(i, j) = -1;
        A(j, i) = -1;
    };
    switch (t.family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            break;
        case 'B':
        case 'C':
            if (n < 2) throw std::invalid_argument("rank too small for " + t.str());
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            if (t.family == 'B') A(n - 1, n - 2) = -2;
            else A(n - 2, n - 1) = -2;
            break;
        case 'D':
            if (n < 4) throw std::invalid_argument("rank too small for " + t.str());
            for (int i = 0; i + 2 < n; ++i) bond(i, i + 1);
            bond(n - 3, n - 1);
            break;
        case 'E':
            if (n < 6 || n > 8) throw std::invalid_argument("invalid rank for " + t.str());
            bond(0, 2);
            bond(1, 3);
            for (int i = 2; i + 1 < n; ++i) bond(i, i + 1);
            break;
        case 'F':
            if (n != 4) throw std::invalid_argument("invalid rank for " + t.str());
            bond(0, 1);
            bond(1, 2);
            bond(2, 3);
            A(2, 1) = -2;
            break;
        case 'G':
            if (n != 2) throw std::invalid_argument("invalid rank for " + t.str());
            bond(0, 1);
            A(0, 1) = -3;
            break;
        default:
            throw std::invalid_argument("unknown Cartan family");
    }
    return A;
}

IntMatrix submatrix(const IntMatrix& m, const std::vector<int>& nodes) {
    auto k = static_cast<Eigen::Index>(nodes.size());
    IntMatrix s(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) s(i, j) = m(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
    return s;
}

std::vector<IntVector> positive_roots(const IntMatrix& A) {
    const Eigen::Index n = A.rows();
    std::vector<IntVector> all;
    std::set<std::vector<long long>> known;
    auto key = [](const IntVector& v) { return std::vector<long long>(v.data(), v.data() + v.size()); };
    std::vector<IntVector> layer;
    for (Eigen::Index i = 0; i < n; ++i) {
        IntVector e = IntVector::Zero(n);
        e(i) = 1;
        layer.push_back(e);
        known.insert(key(e));
    }
    while (!layer.empty()) {
        all.insert(all.end(), layer.begin(), layer.end());
        std::vector<IntVector> next;
        for (const auto& beta : layer) {
            for (Eigen::Index i = 0; i < n; ++i) {
                IntVector down = beta;
                long long p = 0;
                while (true) {
                    down(i) -= 1;
                    if (!known.count(key(down))) break;
                    ++p;
                }
                long long pair = A.row(i).dot(beta);
                if (p - pair <= 0) continue;
                IntVector up = beta;
                up(i) += 1;
                if (known.insert(key(up)).second) next.push_back(up);
            }
        }
        layer = std::move(next);
    }
    return all;
}

IntVector highest_root(const IntMatrix& A) {
    auto roots = positive_roots(A);
    return roots.back();
}

long long positive_root_count(const CartanType& t) {
    const long long n = t.rank;
    switch (t.family) {
        case 'A': return n * (n + 1) / 2;
        case 'B':
        case 'C': return n * n;
        case 'D': return n * (n - 1);
        case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
        case 'F': return 24;
        case 'G': return 6;
        default: throw std::invalid_argument("unknown Cartan family");
    }
}

std::vector<int> invariant_degrees(const CartanType& t) {
    const int n = t.rank;
    std::vector<int> d;
    switch (t.family) {
        case 'A':
            for (int i = 2; i <= n + 1; ++i) d.push_back(i);
            break;
        case 'B':
        case 'C':
            for (int i = 1; i <= n; ++i) d.push_back(2 * i);
            break;
        case 'D':
            for (int i = 1; i < n; ++i) d.push_back(2 * i);
            d.push_back(n);
            break;
        case 'E':
            if (n == 6) d = {2, 5, 6, 8, 9, 12};
            else if (n == 7) d = {2, 6, 8, 10, 12, 14, 18};
            else d = {2, 8, 12, 14, 18, 20, 24, 30};
            break;
        case 'F': d = {2, 6, 8, 12}; break;
        case 'G': d = {2, 6}; break;
        default: throw std::invalid_argument("unknown Cartan family");
    }
    return d;
}

IntMatrix affine_cartan_matrix(const CartanType& t) {
    const int r = t.rank;
    if (r == 0) return IntMatrix::Zero(1, 1);
    IntMatrix A = cartan_matrix(t);
    IntVector a = highest_root(A);
    // squared root lengths, propagated along bonds
    std::vector<long long> len(static_cast<std::size_t>(r), 0);
    len[0] = 6;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int j = 0; j < r; ++j)
            if (i != j && A(i, j) != 0 && len[static_cast<std::size_t>(j)] == 0) {
                len[static_cast<std::size_t>(j)] = A(i, j) * len[static_cast<std::size_t>(i)] / A(j, i);
                q.push(j);
            }
    }
    long long top = *std::max_element(len.begin(), len.end());
    IntMatrix M = IntMatrix::Zero(r + 1, r + 1);
    M.block(1, 1, r, r) = A;
    M(0, 0) = 2;
    for (int j = 0; j < r; ++j) {
        long long row = 0, col = 0;
        for (int i = 0; i < r; ++i) {
            long long c = a(i) * len[static_cast<std::size_t>(i)] / top;
            row += c * A(i, j);
            col += a(i) * A(j, i);
        }
        M(0, j + 1) = -row;
        M(j + 1, 0) = -col;
    }
    return M;
}

IntVector null_vector(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    Eigen::Index r = 0;
    while (r < std::min(s.D.rows(), s.D.cols()) && s.D(r, r) != 0) ++r;
    if (A.cols() - r != 1) throw std::invalid_argument("matrix does not have a one-dimensional kernel");
    IntVector v = s.V.col(A.cols() - 1);
    long long g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = std::gcd(g, v(i));
    v /= g;
    if (v.sum() < 0) v = -v;
    return v;
}

std::vector<std::vector<int>> connected_components(const IntMatrix& A, const std::vector<int>& nodes) {
    std::vector<std::vector<int>> out;
    std::set<int> left(nodes.begin(), nodes.end());
    while (!left.empty()) {
        std::vector<int> comp{*left.begin()};
        left.erase(left.begin());
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (auto it = left.begin(); it != left.end();) {
                if (A(comp[k], *it) != 0) {
                    comp.push_back(*it);
                    it = left.erase(it);
                } else {
                    ++it;
                }
            }
        std::sort(comp.begin(), comp.end());
        out.push_back(comp);
    }
    return out;
}

std::optional<CartanType> identify_cartan(const IntMatrix& A) {
    const auto n = static_cast<int>(A.rows());
    if (n == 0) return std::nullopt;
    if (n == 1) return CartanType{'A', 1};
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    int edges = 0;
    bool triple = false, dbl = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || A(i, j) == 0) continue;
            ++deg[static_cast<std::size_t>(i)];
            if (i < j) ++edges;
            if (A(i, j) == -3) triple = true;
            if (A(i, j) == -2) dbl = true;
        }
    if (edges != n - 1) return std::nullopt;
    if (triple) return n == 2 ? std::optional<CartanType>(CartanType{'G', 2}) : std::nullopt;
    int maxdeg = *std::max_element(deg.begin(), deg.end());
    if (dbl) {
        if (maxdeg > 2) return std::nullopt;
        if (n == 2) return CartanType{'B', 2};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (A(i, j) != -2) continue;
                // row i holds the -2, so node i is short
                if (deg[static_cast<std::size_t>(i)] == 2 && deg[static_cast<std::size_t>(j)] == 2)
                    return n == 4 ? std::optional<CartanType>(CartanType{'F', 4}) : std::nullopt;
                if (deg[static_cast<std::size_t>(i)] == 1) return CartanType{'B', n};
                return CartanType{'C', n};
            }
    }
    if (maxdeg <= 2) return CartanType{'A', n};
    if (maxdeg > 3) return std::nullopt;
    int branch = static_cast<int>(std::find(deg.begin(), deg.end(), 3) - deg.begin());
    std::vector<int> arms;
    for (int j = 0; j < n; ++j) {
        if (j == branch || A(branch, j) == 0) continue;
        int len = 1, prev = branch, cur = j;
        while (deg[static_cast<std::size_t>(cur)] == 2) {
            int nxt = -1;
            for (int k = 0; k < n; ++k)
                if (k != cur && k != prev && A(cur, k) != 0) nxt = k;
            prev = cur;
            cur = nxt;
            ++len;
        }
        if (deg[static_cast<std::size_t>(cur)] != 1) return std::nullopt;
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return CartanType{'D', n};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return CartanType{'E', n};
    return std::nullopt;
}

Perm opposition_involution(const IntMatrix& A) {
    const auto n = static_cast<int>(A.rows());
    IntMatrix w = IntMatrix::Identity(n, n);
    auto reflection = [&](int i) {
        IntMatrix s = IntMatrix::Identity(n, n);
        s.row(i) -= A.row(i);
        return s;
    };
    while (true) {
        int pos = -1;
        for (int i = 0; i < n && pos < 0; ++i)
            if (w.col(i).maxCoeff() > 0) pos = i;
        if (pos < 0) break;
        w = w * reflection(pos);
    }
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (w(j, i) == -1 && (-w.col(i)).sum() == 1) p[static_cast<std::size_t>(i)] = j;
    return p;
}

std::vector<Perm> diagram_automorphisms(const IntMatrix& A) {
    const auto n = static_cast<int>(A.rows());
    std::vector<Perm> out;
    if (n == 0) return {Perm{}};
    // BFS order keeps partial assignments connected
    std::vector<int> order;
    for (const auto& comp : connected_components(A, identity_perm(n))) {
        std::vector<int> seen{comp[0]};
        for (std::size_t k = 0; k < seen.size(); ++k)
            for (int j : comp)
                if (A(seen[k], j) != 0 && std::find(seen.begin(), seen.end(), j) == seen.end()) seen.push_back(j);
        order.insert(order.end(), seen.begin(), seen.end());
    }
    Perm p(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            out.push_back(p);
            return;
        }
        int i = order[k];
        for (int img = 0; img < n; ++img) {
            if (used[static_cast<std::size_t>(img)]) continue;
            bool ok = A(img, img) == A(i, i);
            for (std::size_t m = 0; m < k && ok; ++m) {
                int j = order[m], pj = p[static_cast<std::size_t>(j)];
                ok = A(img, pj) == A(i, j) && A(pj, img) == A(j, i);
            }
            if (!ok) continue;
            p[static_cast<std::size_t>(i)] = img;
            used[static_cast<std::size_t>(img)] = true;
            rec(k + 1);
            used[static_cast<std::size_t>(img)] = false;
        }
        p[static_cast<std::size_t>(i)] = -1;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

Perm outer_twist(const CartanType& t, int order) {
    Perm p = identity_perm(t.rank);
    if (order == 1) return p;
    const int n = t.rank;
    if (order == 2 && t.family == 'A' && n >= 2) {
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = n - 1 - i;
    } else if (order == 2 && t.family == 'D' && n >= 4) {
        std::swap(p[static_cast<std::size_t>(n - 2)], p[static_cast<std::size_t>(n - 1)]);
    } else if (order == 3 && t.family == 'D' && n == 4) {
        p[0] = 2;
        p[2] = 3;
        p[3] = 0;
    } else if (order == 2 && t.family == 'E' && n == 6) {
        std::swap(p[0], p[5]);
        std::swap(p[2], p[4]);
    } else {
        throw std::invalid_argument("no outer automorphism of order " + std::to_string(order) + " on " + t.str());
    }
    return p;
}

namespace {

// Permutation of the affine nodes 0..r attached to the special node j.
Perm special_permutation(const IntMatrix& A, int j) {
    const auto r = static_cast<int>(A.rows());
    Perm p(static_cast<std::size_t>(r + 1));
    if (j == 0) return identity_perm(r + 1);
    Perm iota = opposition_involution(A);
    std::vector<int> rest;
    for (int i = 0; i < r; ++i)
        if (i != j - 1) rest.push_back(i);
    Perm iota_j = opposition_involution(submatrix(A, rest));
    p[0] = j;
    for (int i = 1; i <= r; ++i) {
        int k = iota[static_cast<std::size_t>(i - 1)];
        if (k == j - 1) {
            p[static_cast<std::size_t>(i)] = 0;
        } else {
            auto pos = static_cast<std::size_t>(std::find(rest.begin(), rest.end(), k) - rest.begin());
            p[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(iota_j[pos])] + 1;
        }
    }
    return p;
}

IntMatrix cartan_matrix_or_empty(const CartanType& t) { return t.rank == 0 ? IntMatrix(0, 0) : cartan_matrix(t); }

IntMatrix block_diagonal(const IntMatrix& block, int copies) {
    IntMatrix M = IntMatrix::Zero(block.rows() * copies, block.cols() * copies);
    for (int f = 0; f < copies; ++f) M.block(f * block.rows(), f * block.cols(), block.rows(), block.cols()) = block;
    return M;
}

}  // namespace

std::string GroupSpec::type_label() const {
    return (outer_order > 1 ? std::to_string(outer_order) : std::string()) + type.str();
}

std::string UnramifiedGroup::type_label() const {
    std::string base = (outer_ > 1 ? std::to_string(outer_) : std::string()) + type_.str();
    return factors_ == 1 ? base : "(" + base + ")^" + std::to_string(factors_);
}

Perm UnramifiedGroup::factor_theta() const {
    Perm p(static_cast<std::size_t>(factors_));
    for (int f = 0; f < factors_; ++f) p[static_cast<std::size_t>(f)] = factor_of(theta_[static_cast<std::size_t>(f * nodes_per_factor())]);
    return p;
}

std::vector<std::string> UnramifiedGroup::isogeny_tokens(const CartanType& t, int outer) {
    const int n = t.rank;
    std::vector<std::string> out{"adjoint"};
    switch (t.family) {
        case 'A':
            if (n == 0) return out;
            for (int k = 2; k < n + 1; ++k)
                if ((n + 1) % k == 0) out.push_back("i" + std::to_string(k));
            out.push_back("sc");
            break;
        case 'B':
        case 'C':
        case 'E':
            if (t.family == 'E' && n == 8) return out;
            out.push_back("sc");
            break;
        case 'D':
            if (outer == 3) {
                out.push_back("sc");
                break;
            }
            out.push_back("so");
            if (n % 2 == 0 && outer == 1) {
                out.push_back("hs1");
                out.push_back("hs2");
            }
            out.push_back("sc");
            break;
        default:
            break;
    }
    return out;
}

UnramifiedGroup UnramifiedGroup::make(const CartanType& type, int outer, const std::string& isogeny) {
    UnramifiedGroup G;
    G.type_ = type;
    G.outer_ = outer;
    G.factors_ = 1;
    G.isogeny_ = isogeny;
    Perm twist = outer_twist(type, outer);
    G.theta_ = identity_perm(type.rank + 1);
    for (int i = 0; i < type.rank; ++i) G.theta_[static_cast<std::size_t>(i + 1)] = twist[static_cast<std::size_t>(i)] + 1;

    auto tokens = isogeny_tokens(type, outer);
    if (std::find(tokens.begin(), tokens.end(), isogeny) == tokens.end())
        throw std::invalid_argument("isogeny '" + isogeny + "' not available for " + G.type_label());

    G.init_fundamental_group();
    std::vector<int> gens;
    const int n = type.rank;
    if (isogeny == "adjoint") {
        G.omega_ = G.omega_ad_.everything();
        return G;
    }
    if (isogeny == "sc") {
        G.omega_ = G.omega_ad_.trivial_subgroup();
        return G;
    }
    if (isogeny[0] == 'i') {
        int k = std::stoi(isogeny.substr(1));
        gens.push_back((n + 1) / k);
    } else if (isogeny == "so") {
        gens.push_back(1);
    } else if (isogeny == "hs1") {
        gens.push_back(n - 1);
    } else if (isogeny == "hs2") {
        gens.push_back(n);
    }
    std::vector<FinAbGroup::Element> elems;
    for (int j : gens) elems.push_back(G.special_element({j}));
    G.omega_ = G.omega_ad_.generated_by(elems);
    if (!G.omega_ad_.is_theta_stable(G.omega_))
        throw std::invalid_argument("isogeny '" + isogeny + "' is not stable under the Frobenius of " + G.type_label());
    return G;
}

UnramifiedGroup UnramifiedGroup::restrict_scalars(const UnramifiedGroup& base, int d) {
    if (base.factors_ != 1) throw std::invalid_argument("restriction of scalars needs a simple base group");
    if (d < 1) throw std::invalid_argument("extension degree must be positive");
    UnramifiedGroup G;
    G.type_ = base.type_;
    G.outer_ = base.outer_;
    G.factors_ = d;
    G.isogeny_ = base.isogeny_;
    const int m = base.nodes_per_factor();
    G.theta_ = Perm(static_cast<std::size_t>(m * d));
    for (int f = 0; f < d; ++f)
        for (int i = 0; i < m; ++i)
            G.theta_[static_cast<std::size_t>(f * m + i)] =
                f + 1 < d ? (f + 1) * m + i : base.theta_[static_cast<std::size_t>(i)];
    G.init_fundamental_group();
    std::set<int> allowed;
    for (const auto& x : base.omega_) allowed.insert(base.special_nodes(x)[0]);
    for (const auto& [tuple, x] : G.special_) {
        bool ok = true;
        for (int j : tuple) ok = ok && allowed.count(j) > 0;
        if (ok) G.omega_.insert(x);
    }
    return G;
}

void UnramifiedGroup::init_fundamental_group() {
    const int r = type_.rank, F = factors_, m = r + 1;
    IntMatrix affine = affine_cartan_matrix(type_);
    cartan_ = block_diagonal(affine, F);
    IntVector a = r == 0 ? IntVector::Ones(1) : null_vector(affine);
    marks_.clear();
    for (int f = 0; f < F; ++f)
        for (int i = 0; i < m; ++i) marks_.push_back(a(i));
    special_local_.clear();
    for (int i = 0; i < m; ++i)
        if (a(i) == 1) special_local_.push_back(i);

    IntMatrix A = cartan_matrix_or_empty(type_);
    IntMatrix rel = block_diagonal(A.transpose(), F);
    IntMatrix P = IntMatrix::Zero(F * r, F * r);
    for (int g = 0; g < F * m; ++g) {
        if (g % m == 0) continue;
        int h = theta_[static_cast<std::size_t>(g)];
        if (h % m == 0) throw std::invalid_argument("Frobenius must fix the extending nodes");
        P((h / m) * r + h % m - 1, (g / m) * r + g % m - 1) = 1;
    }
    auto pres = FinAbGroup::from_presentation(rel, P);
    omega_ad_ = pres.group;
    coweight_projection_ = pres.projection;

    std::vector<Perm> local;
    for (int j : special_local_) local.push_back(j == 0 ? identity_perm(m) : special_permutation(A, j));
    perms_.clear();
    special_.clear();
    std::vector<std::size_t> idx(static_cast<std::size_t>(F), 0);
    while (true) {
        std::vector<int> tuple;
        FinAbGroup::Element v(static_cast<std::size_t>(F * r), 0);
        Perm perm = identity_perm(F * m);
        for (int f = 0; f < F; ++f) {
            int j = special_local_[idx[static_cast<std::size_t>(f)]];
            tuple.push_back(j);
            if (j > 0) v[static_cast<std::size_t>(f * r + j - 1)] = 1;
            const Perm& lp = local[idx[static_cast<std::size_t>(f)]];
            for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(f * m + i)] = f * m + lp[static_cast<std::size_t>(i)];
        }
        FinAbGroup::Element x = pres.project(v);
        perms_[x] = perm;
        special_[tuple] = x;
        int f = F - 1;
        while (f >= 0) {
            if (++idx[static_cast<std::size_t>(f)] < special_local_.size()) break;
            idx[static_cast<std::size_t>(f)] = 0;
            --f;
        }
        if (f < 0) break;
    }
    if (static_cast<long long>(perms_.size()) != omega_ad_.size())
        throw std::logic_error("special nodes do not match the fundamental group");
}

const Perm& UnramifiedGroup::omega_perm(const FinAbGroup::Element& x) const { return perms_.at(x); }

const FinAbGroup::Element& UnramifiedGroup::special_element(const std::vector<int>& local_nodes) const {
    auto it = special_.find(local_nodes);
    if (it == special_.end()) throw std::invalid_argument("not a tuple of special nodes");
    return it->second;
}

std::vector<int> UnramifiedGroup::special_nodes(const FinAbGroup::Element& x) const {
    for (const auto& [tuple, y] : special_)
        if (y == x) return tuple;
    throw std::invalid_argument("element outside the fundamental group");
}

std::vector<Perm> UnramifiedGroup::finite_automorphisms() const {
    if (factors_ != 1) throw std::logic_error("diagram automorphisms are listed for simple groups only");
    std::vector<Perm> out;
    for (const auto& p : diagram_automorphisms(cartan_matrix_or_empty(type_))) {
        Perm q = identity_perm(type_.rank + 1);
        for (int i = 0; i < type_.rank; ++i) q[static_cast<std::size_t>(i + 1)] = p[static_cast<std::size_t>(i)] + 1;
        out.push_back(q);
    }
    return out;
}

FinAbGroup::Element UnramifiedGroup::transport(const Perm& tau, const FinAbGroup::Element& x) const {
    Perm target = compose(compose(tau, perms_.at(x)), inverse(tau));
    for (const auto& [y, p] : perms_)
        if (p == target) return y;
    throw std::invalid_argument("permutation does not normalize the fundamental group action");
}

bool UnramifiedGroup::stabilizes_omega(const Perm& tau) const {
    for (const auto& x : omega_)
        if (!omega_.count(transport(tau, x))) return false;
    return true;
}

BasedRootDatum UnramifiedGroup::root_datum() const {
    const int n = factors_ * type_.rank;
    IntMatrix AT = block_diagonal(cartan_matrix_or_empty(type_).transpose(), factors_);
    std::vector<std::vector<int>> lifts;
    for (const auto& x : omega_) lifts.push_back(special_nodes(x));
    IntMatrix gens = IntMatrix::Zero(n, n + static_cast<Eigen::Index>(lifts.size()));
    gens.block(0, 0, n, n) = AT;
    for (std::size_t c = 0; c < lifts.size(); ++c)
        for (int f = 0; f < factors_; ++f) {
            int j = lifts[c][static_cast<std::size_t>(f)];
            if (j > 0) gens(f * type_.rank + j - 1, n + static_cast<Eigen::Index>(c)) = 1;
        }
    SmithForm s = smith_normal_form(gens);
    IntMatrix Dn = s.D.block(0, 0, n, n);
    BasedRootDatum rd;
    rd.type = type_;
    rd.cocharacter_basis = s.Uinv * Dn;
    rd.roots = rd.cocharacter_basis;
    rd.coroots = s.U * AT;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rd.coroots(i, j) % Dn(i, i) != 0) throw std::logic_error("coroot lattice not contained in cocharacters");
            rd.coroots(i, j) /= Dn(i, i);
        }
    }
    return rd;
}

std::pair<CartanType, int> parse_type_label(const std::string& label) {
    static const std::regex re("^([23]?)([A-G])([0-9]+)$");
    std::smatch m;
    if (!std::regex_match(label, m, re)) throw std::invalid_argument("malformed type label '" + label + "' at position 0");
    int outer = m[1].length() ? std::stoi(m[1]) : 1;
    CartanType t{m[2].str()[0], std::stoi(m[3])};
    bool ok = false;
    switch (t.family) {
        case 'A': ok = outer == 1 ? t.rank >= 0 : outer == 2 && t.rank >= 2; break;
        case 'B':
        case 'C': ok = outer == 1 && t.rank >= 2; break;
        case 'D': ok = (outer <= 2 && t.rank >= 4) || (outer == 3 && t.rank == 4); break;
        case 'E': ok = (outer == 1 && t.rank >= 6 && t.rank <= 8) || (outer == 2 && t.rank == 6); break;
        case 'F': ok = outer == 1 && t.rank == 4; break;
        case 'G': ok = outer == 1 && t.rank == 2; break;
    }
    if (!ok) throw std::invalid_argument("unsupported type label '" + label + "' at position 0");
    return {t, outer};
}

GroupSpec parse_spec(const std::string& text) {
    auto c1 = text.find(':');
    auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos) throw std::invalid_argument("spec '" + text + "': expected ':' at position " + std::to_string(text.size()));
    if (c2 == std::string::npos)
        throw std::invalid_argument("spec '" + text + "': expected second ':' at position " + std::to_string(text.size()));
    if (text.find(':', c2 + 1) != std::string::npos)
        throw std::invalid_argument("spec '" + text + "': unexpected ':' at position " + std::to_string(text.find(':', c2 + 1)));
    GroupSpec s;
    try {
        auto [t, outer] = parse_type_label(text.substr(0, c1));
        s.type = t;
        s.outer_order = outer;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("spec '" + text + "': bad type at position 0");
    }
    s.isogeny = text.substr(c1 + 1, c2 - c1 - 1);
    s.form = text.substr(c2 + 1);
    if (s.isogeny.empty()) throw std::invalid_argument("spec '" + text + "': empty isogeny at position " + std::to_string(c1 + 1));
    if (s.form.empty()) throw std::invalid_argument("spec '" + text + "': empty twist at position " + std::to_string(c2 + 1));
    return s;
}

}  // namespace cusp
