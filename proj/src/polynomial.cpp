#include "cusp/polynomial.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cusp {

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

const std::vector<u64>& gcd_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> out;
        for (u64 n = (1ULL << 61) - 1; out.size() < 12; n -= 2)
            if (is_prime(n)) out.push_back(n);
        return out;
    }();
    return primes;
}

using ModPoly = std::vector<u64>;

u64 to_mod(long long a, u64 p) {
    long long r = a % static_cast<long long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long long>(p) : r);
}

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce(const IntPoly& a, u64 p) {
    ModPoly r;
    for (long long c : a.coeffs()) r.push_back(to_mod(c, p));
    trim(r);
    return r;
}

void make_monic(ModPoly& a, u64 p) {
    u64 inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
}

ModPoly mod_remainder(ModPoly a, const ModPoly& b, u64 p) {
    u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        u64 f = mulmod(a.back(), inv, p);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            u64 s = mulmod(f, b[i], p);
            a[off + i] = (a[off + i] + p - s) % p;
        }
        trim(a);
    }
    return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = mod_remainder(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) make_monic(a, p);
    return a;
}

IntPoly normalize_sign(IntPoly p) {
    if (!p.is_zero() && p.lead() < 0) return -p;
    return p;
}

}  // namespace

long long content(const IntPoly& p) {
    long long g = 0;
    for (long long c : p.coeffs()) g = std::gcd(g, c);
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    long long g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<long long> c = p.coeffs();
    for (auto& x : c) x /= g;
    return IntPoly(std::move(c));
}

bool divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) {
        quotient = IntPoly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<long long> r = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<long long> q(r.size() - bc.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        long long top = r[k + bc.size() - 1];
        if (top % b.lead() != 0) return false;
        long long f = top / b.lead();
        q[k] = f;
        if (f == 0) continue;
        for (std::size_t i = 0; i < bc.size(); ++i) r[k + i] = checked_sub(r[k + i], checked_mul(f, bc[i]));
    }
    for (long long x : r)
        if (x != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    long long c = std::gcd(content(a), content(b));
    IntPoly pa = primitive_part(a), pb = primitive_part(b);
    if (pa.degree() == 0 || pb.degree() == 0) return IntPoly::constant(c);
    long long lc = std::gcd(pa.lead(), pb.lead());
    for (u64 p : gcd_primes()) {
        if (pa.lead() % static_cast<long long>(p) == 0 || pb.lead() % static_cast<long long>(p) == 0) continue;
        ModPoly g = mod_gcd(reduce(pa, p), reduce(pb, p), p);
        if (g.size() == 1) return IntPoly::constant(c);
        u64 l = to_mod(lc, p);
        std::vector<long long> lifted;
        for (u64 x : g) {
            u64 y = mulmod(x, l, p);
            lifted.push_back(y > p / 2 ? -static_cast<long long>(p - y) : static_cast<long long>(y));
        }
        IntPoly cand = primitive_part(IntPoly(std::move(lifted)));
        IntPoly qa, qb;
        if (divide_exact(pa, cand, qa) && divide_exact(pb, cand, qb)) return c * cand;
    }
    throw std::overflow_error("polynomial gcd exceeded coefficient range");
}

IntPoly xn_minus_one(std::size_t n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = -1;
    c[n] += 1;
    return IntPoly(std::move(c));
}

IntPoly cyclotomic_polynomial(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
    IntPoly r = xn_minus_one(n);
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        IntPoly q;
        divide_exact(r, cyclotomic_polynomial(d), q);
        r = q;
    }
    return r;
}

std::string to_string(const IntPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        long long c = p.coeffs()[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        long long m = std::llabs(c);
        if (m != 1 || i == 0) os << m;
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace cusp
