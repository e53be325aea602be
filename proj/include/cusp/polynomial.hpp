#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cusp/checked.hpp"

namespace cusp {

template <typename Scalar>
struct RingTraits;

template <>
struct RingTraits<long long> {
    static long long zero() { return 0; }
    static long long one() { return 1; }
    static bool is_zero(long long a) { return a == 0; }
    static long long add(long long a, long long b) { return checked_add(a, b); }
    static long long sub(long long a, long long b) { return checked_sub(a, b); }
    static long long mul(long long a, long long b) { return checked_mul(a, b); }
    static long long neg(long long a) { return checked_sub(0, a); }
};

// Dense univariate polynomial, coefficient i multiplies x^i, no trailing zeros.
template <typename Scalar>
class Polynomial {
public:
    using Traits = RingTraits<Scalar>;

    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const Scalar& a) { return Polynomial(std::vector<Scalar>{a}); }
    static Polynomial monomial(const Scalar& a, std::size_t k) {
        std::vector<Scalar> c(k + 1, Traits::zero());
        c[k] = a;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Traits::zero(); }
    const Scalar& lead() const { return c_.back(); }

    // Lowest power of x with nonzero coefficient.
    int valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!Traits::is_zero(c_[i])) return static_cast<int>(i);
        return -1;
    }

    Polynomial shift_down(std::size_t k) const {
        if (k >= c_.size()) return Polynomial();
        return Polynomial(std::vector<Scalar>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    Polynomial shift_up(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<Scalar> c(k, Traits::zero());
        c.insert(c.end(), c_.begin(), c_.end());
        return Polynomial(std::move(c));
    }

    // p(x^k)
    Polynomial inflate(std::size_t k) const {
        if (is_zero() || k == 1) return *this;
        std::vector<Scalar> c((c_.size() - 1) * k + 1, Traits::zero());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
        return Polynomial(std::move(c));
    }

    // p(-x)
    Polynomial alternate() const {
        std::vector<Scalar> c = c_;
        for (std::size_t i = 1; i < c.size(); i += 2) c[i] = Traits::neg(c[i]);
        return Polynomial(std::move(c));
    }

    template <typename T>
    T eval(const T& x) const {
        T r = T(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Traits::zero());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = Traits::add(a.coeff(i), b.coeff(i));
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Traits::zero());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = Traits::sub(a.coeff(i), b.coeff(i));
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Traits::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (Traits::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = Traits::add(c[i + j], Traits::mul(a.c_[i], b.c_[j]));
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Scalar& s, const Polynomial& a) {
        std::vector<Scalar> c = a.c_;
        for (auto& x : c) x = Traits::mul(s, x);
        return Polynomial(std::move(c));
    }
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(Traits::one());
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

using IntPoly = Polynomial<long long>;

long long content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);

// Exact division in Z[x]; returns false if b does not divide a.
bool divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& quotient);

// Greatest common divisor in Z[x], normalized with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// x^n - 1 and the n-th cyclotomic polynomial.
IntPoly xn_minus_one(std::size_t n);
IntPoly cyclotomic_polynomial(std::size_t n);

std::string to_string(const IntPoly& p, const std::string& var = "t");

}  // namespace cusp
