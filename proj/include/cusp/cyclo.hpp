#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cusp/polynomial.hpp"

namespace cusp {

// Element of the cyclotomic field Q(zeta_m), zeta_m = exp(2 pi i / m), in the power basis
// 1, zeta, ..., zeta^{phi(m)-1} with a common positive denominator.
class Cyclo {
public:
    Cyclo() : Cyclo(0) {}
    Cyclo(long long a);
    Cyclo(long long conductor, std::vector<long long> coeffs, long long den = 1);

    // zeta_m^k
    static Cyclo zeta(long long m, long long k = 1);
    static Cyclo rational(long long num, long long den);

    long long conductor() const { return m_; }
    const std::vector<long long>& coeffs() const { return c_; }
    long long denominator() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    // Numerator and denominator of a rational element.
    std::pair<long long, long long> to_rational() const;

    // Image in Q(zeta_M) for m | M.
    Cyclo lift(long long M) const;
    // zeta -> zeta^k for k coprime to the conductor.
    Cyclo galois(long long k) const;
    Cyclo conj() const { return galois(-1); }
    Cyclo inverse() const;
    // Product of all Galois conjugates.
    Cyclo norm() const;

    std::complex<double> to_complex() const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
    Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
    Cyclo pow(long long e) const;

    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    std::string str() const;

private:
    void normalize();
    long long m_ = 1;
    std::vector<long long> c_;
    long long den_ = 1;
};

template <>
struct RingTraits<Cyclo> {
    static Cyclo zero() { return Cyclo(0); }
    static Cyclo one() { return Cyclo(1); }
    static bool is_zero(const Cyclo& a) { return a.is_zero(); }
    static Cyclo add(const Cyclo& a, const Cyclo& b) { return a + b; }
    static Cyclo sub(const Cyclo& a, const Cyclo& b) { return a - b; }
    static Cyclo mul(const Cyclo& a, const Cyclo& b) { return a * b; }
    static Cyclo neg(const Cyclo& a) { return -a; }
};

using CycloPoly = Polynomial<Cyclo>;

}  // namespace cusp
