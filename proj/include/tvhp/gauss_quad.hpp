#pragma once

#include "tvhp/hermite_core.hpp"

#include <vector>

namespace tvhp {

/// Gauss-Hermite rule for int e^{-x^2} f(x) dx, exact for polynomial f of
/// degree <= 2q-1. Built once via Golub-Welsch; immutable and shareable.
class HermiteRule {
public:
    explicit HermiteRule(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// int d^2z/pi e^{eta |z|^2 + f z + g z*} with Re(eta) < 0.
struct GaussianIntegralSpec {
    Complex eta;
    Complex f;
    Complex g;
};

/// Closed form -(1/eta) exp(-f g / eta). Throws std::domain_error if Re(eta) >= 0.
Complex gaussian_integral_analytic(const GaussianIntegralSpec& spec);

/// Tensor Gauss-Hermite evaluation of the same integral.
Complex gaussian_integral_numeric(const GaussianIntegralSpec& spec, int q);

/// int d^2xi/pi H_{m,n}(xi,xi*) e^{-(a*-xi*)(a-xi)}; equals alpha^m alpha*^n.
/// Quadrature is exact once q > (m+n)/2.
Complex integral_tvhp_forward(long m, long n, Complex alpha, int q);

/// int d^2xi/pi xi^m xi*^n e^{-(a*-xi*)(a-xi)}; equals i^{m+n} H_{m,n}(-i alpha, -i alpha*).
Complex integral_tvhp_reciprocal(long m, long n, Complex alpha, int q);

struct LaguerreProductResult {
    double numeric;          // exact tensor quadrature of the 4D integral
    double published_value;      // cosh^{2m}(lambda) P_m(cosh 2 lambda)
    double corrected_value;  // cosh^2(lambda) * published_value
};

/// int d^2a d^2b / pi^2 L_m(-ab tau) L_m(-a*b* tau)
///     e^{-|a|^2 - |b|^2 + (ab + a*b*) tau},  tau = tanh(lambda), |tau| < 1.
/// The quadratic form diagonalizes under u+- = (a1 +- b1)/sqrt2, w+- = (a2 -+ b2)/sqrt2
/// with axis weights (1 -+ tau); the rotation is hard-coded so the quadrature
/// stays an exact polynomial rule.
LaguerreProductResult integral_laguerre_product(long m, double tau, int q);

}  // namespace tvhp
