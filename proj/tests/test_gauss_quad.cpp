#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvhp/gauss_quad.hpp"
#include "tvhp/fock_numeric.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace tvhp;

namespace {

// Moments of e^{-x^2}: int x^k e^{-x^2} dx = Gamma((k+1)/2) for even k, 0 for odd.
double hermite_moment(int k) {
    if (k % 2 != 0) return 0.0;
    double r = std::sqrt(std::numbers::pi);
    for (int j = k - 2; j >= 0; j -= 2) r *= (j + 1) / 2.0;
    return r;
}

}  // namespace

TEST_CASE("gauss-hermite rule: weight sum and monomial exactness") {
    for (int q : {4, 8, 16, 24}) {
        HermiteRule rule(q);
        double wsum = 0.0;
        for (double w : rule.weights()) wsum += w;
        CHECK(wsum == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

        for (int k = 0; k <= 2 * q - 1; ++k) {
            double got = 0.0;
            double scale = 0.0;  // sum of |terms|, the natural rounding yardstick
            for (int i = 0; i < q; ++i) {
                double term = rule.weights()[i] * std::pow(rule.nodes()[i], k);
                got += term;
                scale += std::abs(term);
            }
            double expect = hermite_moment(k);
            if (k % 2 != 0) {
                CHECK(std::abs(got) <= 1e-13 * std::max(1.0, scale));
            } else {
                CHECK(std::abs(got - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
            }
        }
    }
}

TEST_CASE("basic complex gaussian integral, analytic") {
    CHECK(gaussian_integral_analytic({{-1, 0}, {0, 0}, {0, 0}}).real() == doctest::Approx(1.0));
    CHECK(gaussian_integral_analytic({{-2, 0}, {0, 0}, {0, 0}}).real() == doctest::Approx(0.5));
    CHECK(gaussian_integral_analytic({{-1, 0}, {1, 0}, {1, 0}}).real() ==
          doctest::Approx(std::exp(1.0)));
    CHECK_THROWS_AS(gaussian_integral_analytic({{0.5, 0}, {0, 0}, {0, 0}}), std::domain_error);
}

TEST_CASE("basic complex gaussian integral, numeric vs analytic") {
    CHECK(std::abs(gaussian_integral_numeric({{-1, 0}, {0, 0}, {0, 0}}, 8) - 1.0) < 1e-14);
    GaussianIntegralSpec s1{{-1, 0}, {1, 0}, {1, 0}};
    CHECK(std::abs(gaussian_integral_numeric(s1, 24) - gaussian_integral_analytic(s1)) < 1e-10);
    GaussianIntegralSpec s2{{-1, 0}, {0, 0.3}, {0, -0.3}};
    CHECK(std::abs(gaussian_integral_numeric(s2, 24) - gaussian_integral_analytic(s2)) < 1e-10);
    // Convergence: q -> q+8 stays put.
    GaussianIntegralSpec s3{{-1.5, 0.4}, {1.0, 0.5}, {0.3, -0.2}};
    Complex a = gaussian_integral_numeric(s3, 24);
    Complex b = gaussian_integral_numeric(s3, 32);
    CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("forward TVHP integral reproduces alpha^m alpha*^n") {
    CHECK(std::abs(integral_tvhp_forward(0, 0, {0.7, -0.4}, 4) - 1.0) < 1e-13);
    CHECK(std::abs(integral_tvhp_forward(1, 1, {0, 0}, 4)) < 1e-13);
    CHECK(std::abs(integral_tvhp_forward(1, 0, {2, 0}, 4) - 2.0) < 1e-12);
    for (long m = 0; m <= 6; ++m) {
        for (long n = 0; n <= 6; ++n) {
            Complex alpha{0.9, -0.8};
            Complex expect = std::pow(alpha, static_cast<double>(m)) *
                             std::pow(std::conj(alpha), static_cast<double>(n));
            int q = static_cast<int>((m + n) / 2 + 2);
            CHECK(std::abs(integral_tvhp_forward(m, n, alpha, q) - expect) <=
                  1e-12 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("reciprocal TVHP integral reproduces i^{m+n} H_{m,n}(-i a, -i a*)") {
    const Complex i{0, 1};
    CHECK(std::abs(integral_tvhp_reciprocal(0, 0, {0.3, 0.1}, 4) - 1.0) < 1e-13);
    // (1,1): E|xi|^2 = |alpha|^2 + 1
    Complex alpha{0.5, -0.2};
    CHECK(std::abs(integral_tvhp_reciprocal(1, 1, alpha, 4) - (std::norm(alpha) + 1.0)) < 1e-13);
    CHECK(std::abs(integral_tvhp_reciprocal(1, 0, {1, 1}, 4) - Complex{1, 1}) < 1e-13);
    for (long m = 0; m <= 6; ++m) {
        for (long n = 0; n <= 6; ++n) {
            Complex a{-0.6, 1.1};
            Complex expect = std::pow(i, static_cast<double>(m + n)) *
                             hermite_eval(m, n, -i * a, -i * std::conj(a));
            int q = static_cast<int>((m + n) / 2 + 2);
            CHECK(std::abs(integral_tvhp_reciprocal(m, n, a, q) - expect) <=
                  1e-12 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("mutual transform: TVHP expansion of xi^m xi*^n composed with the forward integral") {
    // xi^m xi*^n = sum_l C(m,l) C(n,l) l! H_{m-l,n-l}(xi, xi*): verify exactly first.
    for (long m = 0; m <= 5; ++m) {
        for (long n = 0; n <= 5; ++n) {
            BivariatePoly expansion;
            for (long l = 0; l <= std::min(m, n); ++l) {
                GaussianRational c{BigRational{binomial(m, l) * binomial(n, l) * factorial(l)}};
                for (const auto& [key, hc] : hermite_coeffs(m - l, n - l).terms())
                    expansion.add_term(key.first, key.second, hc * c);
            }
            CHECK(expansion == BivariatePoly::monomial(m, n));
        }
    }
    // Then the composed integrals must reproduce the reciprocal result.
    const Complex i{0, 1};
    Complex alpha{0.8, -0.5};
    for (long m = 0; m <= 5; ++m) {
        for (long n = 0; n <= 5; ++n) {
            Complex composed = 0.0;
            int q = static_cast<int>((m + n) / 2 + 2);
            for (long l = 0; l <= std::min(m, n); ++l) {
                double c = (binomial(m, l) * binomial(n, l) * factorial(l)).convert_to<double>();
                composed += c * integral_tvhp_forward(m - l, n - l, alpha, q);
            }
            Complex expect = std::pow(i, static_cast<double>(m + n)) *
                             hermite_eval(m, n, -i * alpha, -i * std::conj(alpha));
            CHECK(std::abs(composed - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("4D quadratic form eigenstructure matches the hard-coded rotation") {
    const double tau = 0.37;
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    A(0, 0) = A(1, 1) = A(2, 2) = A(3, 3) = -1.0;
    // variables (a1, a2, b1, b2); cross terms from 2 tau (a1 b1 - a2 b2)
    A(0, 2) = A(2, 0) = tau;
    A(1, 3) = A(3, 1) = -tau;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(A);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(-(1 + tau)));
    CHECK(ev[1] == doctest::Approx(-(1 + tau)));
    CHECK(ev[2] == doctest::Approx(-(1 - tau)));
    CHECK(ev[3] == doctest::Approx(-(1 - tau)));
}

TEST_CASE("laguerre product integral") {
    // m = 0: pure Gaussian determinant 1/(1-tau^2).
    auto r0 = integral_laguerre_product(0, 0.5, 6);
    CHECK(r0.numeric == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(r0.published_value == doctest::Approx(1.0));
    CHECK(r0.corrected_value == doctest::Approx(4.0 / 3.0));

    auto rtiny = integral_laguerre_product(0, 1e-8, 6);
    CHECK(rtiny.numeric == doctest::Approx(1.0));

    // Stability under raising q beyond the exactness threshold.
    auto r1 = integral_laguerre_product(2, 0.4, 8);
    auto r2 = integral_laguerre_product(2, 0.4, 14);
    CHECK(std::abs(r1.numeric - r2.numeric) < 1e-10 * std::max(1.0, std::abs(r1.numeric)));

    // Coherent-state route: numeric = psv_norm / ((m!)^2 tau^{2m}).
    for (long m = 1; m <= 3; ++m) {
        double tau = 0.3;
        auto res = integral_laguerre_product(m, tau, static_cast<int>(2 * m + 4));
        PsvNorm norm = psv_norm_squared(m, SqueezeParam::from_tau(tau), {40});
        double mfac = factorial(m).convert_to<double>();
        double via_norm = norm.numeric / (mfac * mfac * std::pow(tau, 2.0 * m));
        CHECK(std::abs(res.numeric - via_norm) <= 1e-8 * std::max(1.0, std::abs(via_norm)));
    }

    CHECK_THROWS_AS(integral_laguerre_product(1, 1.0, 8), std::domain_error);
}
