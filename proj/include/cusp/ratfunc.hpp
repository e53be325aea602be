#pragma once

#include <complex>
#include <string>

#include "cusp/polynomial.hpp"

namespace cusp {

// Element of Q(t) with t = q^{1/2}, kept as a reduced fraction of integer polynomials.
class RatFunc {
public:
    RatFunc() : num_(), den_(IntPoly::constant(1)) {}
    RatFunc(long long a) : num_(IntPoly::constant(a)), den_(IntPoly::constant(1)) {}
    RatFunc(const IntPoly& num, const IntPoly& den);
    explicit RatFunc(const IntPoly& num) : RatFunc(num, IntPoly::constant(1)) {}

    static RatFunc t() { return RatFunc(IntPoly{0, 1}); }
    static RatFunc q() { return RatFunc(IntPoly{0, 0, 1}); }
    // t^k for any integer k.
    static RatFunc t_power(long long k);
    // Embeds a polynomial in q.
    static RatFunc from_q(const IntPoly& p) { return RatFunc(p.inflate(2)); }

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0 && den_.lead() == 1; }

    // f(t^d)
    RatFunc inflate(std::size_t d) const { return RatFunc(num_.inflate(d), den_.inflate(d)); }
    // f(-t)
    RatFunc alternate() const { return RatFunc(num_.alternate(), den_.alternate()); }
    // Drops a global sign so that the leading coefficient of the numerator is positive.
    RatFunc abs_sign() const;

    RatFunc pow(long long e) const;

    double eval(double t) const { return num_.eval(t) / den_.eval(t); }
    std::complex<double> eval(std::complex<double> t) const { return num_.eval(t) / den_.eval(t); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str() const;

private:
    void canonicalize();
    IntPoly num_, den_;
};

template <>
struct RingTraits<RatFunc> {
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }
    static bool is_zero(const RatFunc& a) { return a.is_zero(); }
    static RatFunc add(const RatFunc& a, const RatFunc& b) { return a + b; }
    static RatFunc sub(const RatFunc& a, const RatFunc& b) { return a - b; }
    static RatFunc mul(const RatFunc& a, const RatFunc& b) { return a * b; }
    static RatFunc neg(const RatFunc& a) { return -a; }
};

// Polynomials in an auxiliary variable with coefficients in Q(t).
using RatPoly = Polynomial<RatFunc>;

}  // namespace cusp
