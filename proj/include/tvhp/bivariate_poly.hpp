#pragma once

#include "tvhp/gaussian_rational.hpp"

#include <complex>
#include <map>
#include <utility>

namespace tvhp {

/// Sparse exact polynomial in two commuting indeterminates (u, v).
/// Canonical: zero coefficients are never stored.
class BivariatePoly {
public:
    using Key = std::pair<long, long>;  // (u-exponent, v-exponent)
    using TermMap = std::map<Key, GaussianRational>;

    BivariatePoly() = default;

    static BivariatePoly constant(GaussianRational c) {
        BivariatePoly p;
        p.add_term(0, 0, std::move(c));
        return p;
    }
    static BivariatePoly monomial(long j, long k, GaussianRational c = 1) {
        BivariatePoly p;
        p.add_term(j, k, std::move(c));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(long j, long k, GaussianRational c) {
        if (c.is_zero()) return;
        auto it = terms_.find({j, k});
        if (it == terms_.end()) {
            terms_.emplace(Key{j, k}, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coeff(long j, long k) const {
        auto it = terms_.find({j, k});
        return it == terms_.end() ? GaussianRational{} : it->second;
    }

    BivariatePoly& operator+=(const BivariatePoly& o) {
        for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
        return *this;
    }
    BivariatePoly& operator-=(const BivariatePoly& o) {
        for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
        return *this;
    }
    friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
    friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }

    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }

    BivariatePoly scaled(const GaussianRational& c) const {
        BivariatePoly r;
        if (c.is_zero()) return r;
        for (const auto& [key, t] : terms_) r.terms_.emplace(key, t * c);
        return r;
    }

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
        return a.terms_ == b.terms_;
    }

    std::complex<double> eval(std::complex<double> u, std::complex<double> v) const;

private:
    TermMap terms_;
};

}  // namespace tvhp
