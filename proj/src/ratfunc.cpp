#include "cusp/ratfunc.hpp"

#include <stdexcept>

namespace cusp {

RatFunc::RatFunc(const IntPoly& num, const IntPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    if (num_.is_zero()) {
        den_ = IntPoly::constant(1);
        return;
    }
    IntPoly g = gcd(num_, den_);
    if (g.lead() < 0) g = -g;
    if (den_.lead() < 0) g = -g;
    IntPoly n, d;
    divide_exact(num_, g, n);
    divide_exact(den_, g, d);
    num_ = std::move(n);
    den_ = std::move(d);
}

RatFunc RatFunc::t_power(long long k) {
    if (k >= 0) return RatFunc(IntPoly::monomial(1, static_cast<std::size_t>(k)));
    return RatFunc(IntPoly::constant(1), IntPoly::monomial(1, static_cast<std::size_t>(-k)));
}

RatFunc RatFunc::abs_sign() const {
    if (!num_.is_zero() && num_.lead() < 0) return -*this;
    return *this;
}

RatFunc RatFunc::pow(long long e) const {
    RatFunc base = *this;
    if (e < 0) {
        base = RatFunc(1) / base;
        e = -e;
    }
    RatFunc r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    IntPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    IntPoly an, bd, bn, ad;
    divide_exact(a.num_, g1, an);
    divide_exact(b.den_, g1, bd);
    divide_exact(b.num_, g2, bn);
    divide_exact(a.den_, g2, ad);
    return RatFunc(an * bn, ad * bd);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return a * RatFunc(b.den_, b.num_);
}

std::string RatFunc::str() const {
    if (den_ == IntPoly::constant(1)) return to_string(num_);
    std::string n = to_string(num_), d = to_string(den_);
    bool nsimple = num_.coeffs().size() - static_cast<std::size_t>(std::max(num_.valuation(), 0)) == 1;
    bool dsimple = den_.coeffs().size() - static_cast<std::size_t>(std::max(den_.valuation(), 0)) == 1;
    return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

}  // namespace cusp
