#include "tvhp/gauss_quad.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tvhp {

HermiteRule::HermiteRule(int order) {
    if (order < 1) throw std::domain_error("HermiteRule: order must be >= 1");
    // Golub-Welsch on the Jacobi matrix of the (physicists') Hermite weight:
    // off-diagonal beta_k = sqrt(k/2).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double beta = std::sqrt(k / 2.0);
        J(k, k - 1) = beta;
        J(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes_.resize(order);
    weights_.resize(order);

    // Orthonormal polynomials for e^{-x^2}: p_0 = pi^{-1/4},
    // p_{k+1} = (x p_k - beta_k p_{k-1}) / beta_{k+1}, p_q' = sqrt(2q) p_{q-1}.
    auto eval = [order](double x, double& pq, double& pqm1, double& wsum) {
        double pm1 = 0.0;
        double p = 1.0 / std::pow(std::numbers::pi, 0.25);
        wsum = p * p;
        for (int k = 0; k < order; ++k) {
            double bk = std::sqrt(k / 2.0);
            double bk1 = std::sqrt((k + 1) / 2.0);
            double pnext = (x * p - bk * pm1) / bk1;
            pm1 = p;
            p = pnext;
            if (k + 1 < order) wsum += p * p;
        }
        pq = p;
        pqm1 = pm1;
    };

    for (int k = 0; k < order; ++k) {
        double x = es.eigenvalues()(k);
        double pq, pqm1, wsum;
        // Newton refinement of the eigenvalue estimate.
        for (int it = 0; it < 8; ++it) {
            eval(x, pq, pqm1, wsum);
            double step = pq / (std::sqrt(2.0 * order) * pqm1);
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        eval(x, pq, pqm1, wsum);
        nodes_[k] = x;
        weights_[k] = 1.0 / wsum;  // Christoffel function at the node
    }

    // Enforce exact +/- symmetry so odd integrands cancel to the last bit.
    for (int k = 0; k < order / 2; ++k) {
        int j = order - 1 - k;
        double mag = 0.5 * (std::abs(nodes_[k]) + std::abs(nodes_[j]));
        nodes_[k] = -mag;
        nodes_[j] = mag;
        double w = 0.5 * (weights_[k] + weights_[j]);
        weights_[k] = weights_[j] = w;
    }
    if (order % 2 == 1) nodes_[order / 2] = 0.0;
}

Complex gaussian_integral_analytic(const GaussianIntegralSpec& spec) {
    if (spec.eta.real() >= 0.0)
        throw std::domain_error("gaussian_integral_analytic: requires Re(eta) < 0");
    return -1.0 / spec.eta * std::exp(-spec.f * spec.g / spec.eta);
}

Complex gaussian_integral_numeric(const GaussianIntegralSpec& spec, int q) {
    if (spec.eta.real() >= 0.0)
        throw std::domain_error("gaussian_integral_numeric: requires Re(eta) < 0");
    const HermiteRule rule(q);
    const double scale = std::sqrt(-spec.eta.real());
    // z = (x + i y)/scale maps the damping part of eta|z|^2 onto e^{-x^2-y^2};
    // the residual phase exp(i Im(eta) |z|^2) stays in the integrand.
    Complex acc = 0.0;
    for (int ix = 0; ix < q; ++ix) {
        for (int iy = 0; iy < q; ++iy) {
            Complex z{rule.nodes()[ix] / scale, rule.nodes()[iy] / scale};
            Complex rest = std::exp(Complex{0.0, spec.eta.imag()} * std::norm(z) + spec.f * z +
                                    spec.g * std::conj(z));
            acc += rule.weights()[ix] * rule.weights()[iy] * rest;
        }
    }
    return acc / (scale * scale) / std::numbers::pi;
}

namespace {

using ComplexL = std::complex<long double>;

/// Closed-sum evaluation in extended precision: the alternating terms cancel
/// hard enough near the 1e-12 budget that double precision is not enough.
ComplexL hermite_eval_l(long m, long n, ComplexL u, ComplexL v) {
    ComplexL acc = 0.0L;
    for (long l = 0; l <= std::min(m, n); ++l) {
        long double c = (factorial(m) * factorial(n)).convert_to<long double>() /
                        (factorial(l) * factorial(m - l) * factorial(n - l))
                            .convert_to<long double>();
        if (l % 2 != 0) c = -c;
        ComplexL term = c;
        for (long k = 0; k < m - l; ++k) term *= u;
        for (long k = 0; k < n - l; ++k) term *= v;
        acc += term;
    }
    return acc;
}

}  // namespace

Complex integral_tvhp_forward(long m, long n, Complex alpha, int q) {
    const HermiteRule rule(q);
    const ComplexL al{alpha.real(), alpha.imag()};
    ComplexL acc = 0.0L;
    for (int ix = 0; ix < q; ++ix) {
        for (int iy = 0; iy < q; ++iy) {
            ComplexL z{rule.nodes()[ix], rule.nodes()[iy]};
            ComplexL xi = al + z;
            long double w =
                static_cast<long double>(rule.weights()[ix]) * rule.weights()[iy];
            acc += w * hermite_eval_l(m, n, xi, std::conj(xi));
        }
    }
    acc /= static_cast<long double>(std::numbers::pi);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Complex integral_tvhp_reciprocal(long m, long n, Complex alpha, int q) {
    const HermiteRule rule(q);
    const ComplexL al{alpha.real(), alpha.imag()};
    ComplexL acc = 0.0L;
    for (int ix = 0; ix < q; ++ix) {
        for (int iy = 0; iy < q; ++iy) {
            ComplexL z{rule.nodes()[ix], rule.nodes()[iy]};
            ComplexL xi = al + z;
            ComplexL xis = std::conj(xi);
            ComplexL val = 1.0L;
            for (long k = 0; k < m; ++k) val *= xi;
            for (long k = 0; k < n; ++k) val *= xis;
            long double w =
                static_cast<long double>(rule.weights()[ix]) * rule.weights()[iy];
            acc += w * val;
        }
    }
    acc /= static_cast<long double>(std::numbers::pi);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

LaguerreProductResult integral_laguerre_product(long m, double tau, int q) {
    if (std::abs(tau) >= 1.0)
        throw std::domain_error("integral_laguerre_product: requires |tau| < 1");
    const HermiteRule rule(q);
    const double sp = std::sqrt(1.0 - tau);  // u+, w+ axes
    const double sm = std::sqrt(1.0 + tau);  // u-, w- axes
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    double acc = 0.0;
    for (int i1 = 0; i1 < q; ++i1) {
        const double up = rule.nodes()[i1] / sp;
        for (int i2 = 0; i2 < q; ++i2) {
            const double um = rule.nodes()[i2] / sm;
            const double a1 = (up + um) * inv_sqrt2;
            const double b1 = (up - um) * inv_sqrt2;
            const double w12 = rule.weights()[i1] * rule.weights()[i2];
            for (int i3 = 0; i3 < q; ++i3) {
                const double wp = rule.nodes()[i3] / sp;
                for (int i4 = 0; i4 < q; ++i4) {
                    const double wm = rule.nodes()[i4] / sm;
                    const double a2 = (wp + wm) * inv_sqrt2;
                    const double b2 = (wm - wp) * inv_sqrt2;
                    const Complex a{a1, a2}, b{b1, b2};
                    const Complex ab = a * b;
                    const Complex lm = laguerre_eval(m, -ab * tau);
                    acc += w12 * rule.weights()[i3] * rule.weights()[i4] * std::norm(lm);
                }
            }
        }
    }
    const double pi = std::numbers::pi;
    double numeric = acc / (pi * pi) / ((1.0 - tau) * (1.0 + tau));

    const double lambda = std::atanh(tau);
    const double published =
        std::pow(std::cosh(lambda), 2.0 * m) * legendre_eval(m, std::cosh(2.0 * lambda)).real();
    const double cosh2 = std::cosh(lambda) * std::cosh(lambda);
    return {numeric, published, cosh2 * published};
}

}  // namespace tvhp
