#include "cusp/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cusp {

namespace {

const IntPoly& cached_cyclotomic(long long m) {
    static std::map<long long, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, cyclotomic_polynomial(static_cast<std::size_t>(m))).first;
    return it->second;
}

// Reduces a coefficient vector modulo the monic polynomial Phi_m.
std::vector<long long> reduce_mod_cyclotomic(std::vector<long long> v, long long m) {
    const auto& phi = cached_cyclotomic(m).coeffs();
    std::size_t d = phi.size() - 1;
    for (std::size_t k = v.size(); k-- > d;) {
        long long f = v[k];
        if (f == 0) continue;
        for (std::size_t i = 0; i <= d; ++i) v[k - d + i] = checked_sub(v[k - d + i], checked_mul(f, phi[i]));
    }
    v.resize(d, 0);
    return v;
}

long long lcm_checked(long long a, long long b) { return checked_mul(a / std::gcd(a, b), b); }

}  // namespace

Cyclo::Cyclo(long long a) : m_(1), c_{a}, den_(1) {}

Cyclo::Cyclo(long long conductor, std::vector<long long> coeffs, long long den) : m_(conductor), den_(den) {
    if (m_ <= 0) throw std::invalid_argument("cyclotomic conductor must be positive");
    if (den_ == 0) throw std::domain_error("zero denominator");
    c_ = reduce_mod_cyclotomic(std::move(coeffs), m_);
    normalize();
}

Cyclo Cyclo::zeta(long long m, long long k) {
    std::vector<long long> v(static_cast<std::size_t>(m), 0);
    v[static_cast<std::size_t>(floor_mod(k, m))] = 1;
    return Cyclo(m, std::move(v));
}

Cyclo Cyclo::rational(long long num, long long den) { return Cyclo(1, {num}, den); }

void Cyclo::normalize() {
    if (den_ < 0) {
        den_ = checked_sub(0, den_);
        for (auto& x : c_) x = checked_sub(0, x);
    }
    long long g = den_;
    for (long long x : c_) g = std::gcd(g, x);
    if (g > 1) {
        den_ /= g;
        for (auto& x : c_) x /= g;
    }
    if (is_zero()) den_ = 1;
}

bool Cyclo::is_zero() const {
    for (long long x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::pair<long long, long long> Cyclo::to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return {c_.empty() ? 0 : c_[0], den_};
}

Cyclo Cyclo::lift(long long M) const {
    if (M % m_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
    if (M == m_) return *this;
    long long s = M / m_;
    std::vector<long long> v(static_cast<std::size_t>(M), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[static_cast<std::size_t>(static_cast<long long>(i) * s)] = c_[i];
    return Cyclo(M, std::move(v), den_);
}

Cyclo Cyclo::galois(long long k) const {
    if (std::gcd(floor_mod(k, m_), m_) != 1 && m_ > 1) throw std::invalid_argument("Galois exponent not coprime");
    std::vector<long long> v(static_cast<std::size_t>(m_), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        auto j = static_cast<std::size_t>(floor_mod(static_cast<long long>(i) * k, m_));
        v[j] = checked_add(v[j], c_[i]);
    }
    return Cyclo(m_, std::move(v), den_);
}

Cyclo Cyclo::norm() const {
    Cyclo r(1);
    for (long long k = 1; k <= m_; ++k)
        if (std::gcd(k, m_) == 1) r = r * galois(k);
    return r;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("cyclotomic division by zero");
    Cyclo others(1);
    for (long long k = 2; k <= m_; ++k)
        if (std::gcd(k, m_) == 1) others = others * galois(k);
    auto [n, d] = (others * *this).to_rational();
    return others * Cyclo::rational(d, n);
}

Cyclo Cyclo::pow(long long e) const {
    Cyclo base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    Cyclo r(1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::complex<double> Cyclo::to_complex() const {
    std::complex<double> r = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        r += static_cast<double>(c_[i]) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m_));
    return r / static_cast<double>(den_);
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    long long M = lcm_checked(a.m_, b.m_);
    Cyclo x = a.lift(M), y = b.lift(M);
    long long den = lcm_checked(x.den_, y.den_);
    std::vector<long long> v(x.c_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = checked_add(checked_mul(x.c_[i], den / x.den_), checked_mul(y.c_[i], den / y.den_));
    return Cyclo(M, std::move(v), den);
}

Cyclo operator-(const Cyclo& a) {
    Cyclo r = a;
    for (auto& x : r.c_) x = checked_sub(0, x);
    return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    long long M = lcm_checked(a.m_, b.m_);
    Cyclo x = a.lift(M), y = b.lift(M);
    std::vector<long long> v(x.c_.size() + y.c_.size(), 0);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i] == 0) continue;
        for (std::size_t j = 0; j < y.c_.size(); ++j)
            v[i + j] = checked_add(v[i + j], checked_mul(x.c_[i], y.c_[j]));
    }
    return Cyclo(M, std::move(v), checked_mul(x.den_, y.den_));
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    long long M = lcm_checked(a.m_, b.m_);
    Cyclo x = a.lift(M), y = b.lift(M);
    return x.c_ == y.c_ && x.den_ == y.den_;
}

std::string Cyclo::str() const {
    if (is_rational()) {
        auto [n, d] = to_rational();
        return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
    }
    std::ostringstream os;
    bool first = true;
    os << "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0) os << "-";
        long long a = c_[i] < 0 ? -c_[i] : c_[i];
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "z" << m_;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    os << ")";
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

}  // namespace cusp
