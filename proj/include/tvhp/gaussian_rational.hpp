#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace tvhp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact complex scalar with rational real and imaginary parts.
/// The coefficient field for every symbolic identity check.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}
    GaussianRational(BigInt v) : re_(std::move(v)) {}
    GaussianRational(BigRational re, BigRational im = 0)
        : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {0, 1}; }

    /// i^k for any integer k (including negative).
    static GaussianRational unit_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }

    const BigRational& re() const { return re_; }
    const BigRational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        BigRational r = re_ * o.re_ - im_ * o.im_;
        BigRational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    /// Exact division by a nonzero rational scalar.
    GaussianRational div_rational(const BigRational& q) const {
        if (q == 0) throw std::domain_error("GaussianRational: division by zero");
        return {re_ / q, im_ / q};
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    std::string str() const;

private:
    BigRational re_{0};
    BigRational im_{0};
};

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long j = 0; j < k; ++j) {
        r *= (n - j);
        r /= (j + 1);
    }
    return r;
}

}  // namespace tvhp
