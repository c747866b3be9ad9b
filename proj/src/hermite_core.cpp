#include "tvhp/hermite_core.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tvhp {

std::complex<double> BivariatePoly::eval(std::complex<double> u, std::complex<double> v) const {
    long max_j = 0, max_k = 0;
    for (const auto& [key, c] : terms()) {
        max_j = std::max(max_j, key.first);
        max_k = std::max(max_k, key.second);
    }
    std::vector<Complex> up(max_j + 1), vp(max_k + 1);
    up[0] = vp[0] = 1.0;
    for (long j = 1; j <= max_j; ++j) up[j] = up[j - 1] * u;
    for (long k = 1; k <= max_k; ++k) vp[k] = vp[k - 1] * v;
    Complex acc = 0.0;
    for (const auto& [key, c] : terms()) acc += c.to_complex() * up[key.first] * vp[key.second];
    return acc;
}

namespace {

BivariatePoly make_hermite(long m, long n) {
    BivariatePoly p;
    const BigInt mf = factorial(m), nf = factorial(n);
    const long lmax = std::min(m, n);
    for (long l = 0; l <= lmax; ++l) {
        BigInt num = mf * nf;
        BigInt den = factorial(l) * factorial(m - l) * factorial(n - l);
        BigRational c{num, den};  // always an integer for these factorial ratios
        if (l % 2 != 0) c = -c;
        p.add_term(m - l, n - l, GaussianRational{c});
    }
    return p;
}

struct HermiteCache {
    std::mutex mu;
    std::map<std::pair<long, long>, std::unique_ptr<const BivariatePoly>> polys;
};

HermiteCache& cache() {
    static HermiteCache c;
    return c;
}

}  // namespace

const BivariatePoly& hermite_coeffs(long m, long n) {
    if (m < 0 || n < 0) throw std::domain_error("hermite_coeffs: negative degree");
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.polys.find({m, n});
    if (it == c.polys.end()) {
        it = c.polys.emplace(std::pair{m, n},
                             std::make_unique<const BivariatePoly>(make_hermite(m, n)))
                 .first;
    }
    return *it->second;
}

Complex hermite_eval(long m, long n, Complex u, Complex v) {
    return hermite_coeffs(m, n).eval(u, v);
}

BivariatePoly laguerre_coeffs(long m) {
    if (m < 0) throw std::domain_error("laguerre_coeffs: negative degree");
    BivariatePoly p;
    for (long k = 0; k <= m; ++k) {
        BigRational c{binomial(m, k), factorial(k)};
        if (k % 2 != 0) c = -c;
        p.add_term(k, 0, GaussianRational{c});
    }
    return p;
}

Complex laguerre_eval(long m, Complex x) { return laguerre_coeffs(m).eval(x, 0.0); }

Complex legendre_eval(long m, Complex x) {
    if (m < 0) throw std::domain_error("legendre_eval: negative degree");
    Complex acc = 0.0;
    for (long l = 0; l <= m / 2; ++l) {
        BigRational c{factorial(2 * m - 2 * l),
                      (BigInt{1} << m) * factorial(l) * factorial(m - l) * factorial(m - 2 * l)};
        if (l % 2 != 0) c = -c;
        acc += c.convert_to<double>() * std::pow(x, static_cast<double>(m - 2 * l));
    }
    return acc;
}

double check_laguerre_relation(long m, Complex x, Complex y) {
    Complex lhs = hermite_eval(m, m, x, y);
    Complex rhs = laguerre_eval(m, x * y) * factorial(m).convert_to<double>();
    if (m % 2 != 0) rhs = -rhs;
    return std::abs(lhs - rhs);
}

BivariatePoly laguerre_relation_difference(long m) {
    // L_m(uv): substitute x^k -> u^k v^k.
    BivariatePoly lag;
    const BivariatePoly lm = laguerre_coeffs(m);
    for (const auto& [key, c] : lm.terms()) lag.add_term(key.first, key.first, c);
    GaussianRational scale{BigRational{factorial(m)}};
    if (m % 2 != 0) scale = -scale;
    return hermite_coeffs(m, m) - lag.scaled(scale);
}

double residual_genfunc_single(const GenParams& p, Complex u, Complex v, long M) {
    if (M < 0) throw std::domain_error("residual_genfunc_single: negative truncation");
    Complex sum = 0.0;
    Complex tm = 1.0;
    double mfac = 1.0;
    for (long m = 0; m <= M; ++m) {
        Complex tn = 1.0;
        double nfac = 1.0;
        for (long n = 0; n <= M; ++n) {
            sum += tm * tn / (mfac * nfac) * hermite_eval(m, n, u, v);
            tn *= p.t_prime;
            nfac *= static_cast<double>(n + 1);
        }
        tm *= p.t;
        mfac *= static_cast<double>(m + 1);
    }
    Complex closed = std::exp(-p.t * p.t_prime + p.t * u + p.t_prime * v);
    return std::abs(sum - closed);
}

double residual_genfunc_double(const GenParams& p, Complex x, Complex y, Complex xp,
                               Complex yp, long M) {
    const Complex ts = p.t * p.s;
    if (std::abs(ts) >= 1.0) throw std::domain_error("residual_genfunc_double: |ts| >= 1");
    Complex sum = 0.0;
    Complex sm = 1.0;
    double mfac = 1.0;
    for (long m = 0; m <= M; ++m) {
        Complex tn = 1.0;
        double nfac = 1.0;
        for (long n = 0; n <= M; ++n) {
            sum += sm * tn / (mfac * nfac) * hermite_eval(m, n, x, y) * hermite_eval(m, n, xp, yp);
            tn *= p.t;
            nfac *= static_cast<double>(n + 1);
        }
        sm *= p.s;
        mfac *= static_cast<double>(m + 1);
    }
    Complex closed = std::exp((p.s * x * xp + p.t * y * yp - ts * (x * y + xp * yp)) / (1.0 - ts)) /
                     (1.0 - ts);
    return std::abs(sum - closed);
}

double residual_genfunc_fixed_m(long m, double t, Complex x, Complex y, Complex xp,
                                Complex yp, long M) {
    if (!(t > 0.0)) throw std::domain_error("residual_genfunc_fixed_m: requires real t > 0");
    Complex sum = 0.0;
    double tn = 1.0, nfac = 1.0;
    for (long n = 0; n <= M; ++n) {
        sum += tn / nfac * hermite_eval(m, n, x, y) * hermite_eval(m, n, xp, yp);
        tn *= t;
        nfac *= static_cast<double>(n + 1);
    }
    const double rt = std::sqrt(t);
    const Complex i{0.0, 1.0};
    Complex closed = std::pow(Complex{-t, 0.0}, static_cast<double>(m)) * std::exp(t * y * yp) *
                     hermite_eval(m, m, i * (rt * yp - x / rt), i * (rt * y - xp / rt));
    return std::abs(sum - closed);
}

double residual_laguerre_genfunc(Complex s, Complex x, long M) {
    if (std::abs(s) >= 1.0) throw std::domain_error("residual_laguerre_genfunc: |s| >= 1");
    Complex sum = 0.0;
    Complex sm = 1.0;
    for (long m = 0; m <= M; ++m) {
        sum += laguerre_eval(m, x) * sm;
        sm *= s;
    }
    Complex closed = std::exp(-x * s / (1.0 - s)) / (1.0 - s);
    return std::abs(sum - closed);
}

}  // namespace tvhp
