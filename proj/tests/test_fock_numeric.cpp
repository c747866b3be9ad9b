#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvhp/fock_numeric.hpp"

#include <cmath>
#include <random>

using namespace tvhp;

TEST_CASE("entangled state amplitudes at xi = 0") {
    TwoModeState st = build_entangled_state({0, 0}, {20});
    // H_{m,n}(0,0) = (-1)^n n! delta_{mn}; amps(n,n) = (-1)^n.
    for (long n = 0; n <= 6; ++n) {
        CHECK(st.at(n, n).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
        if (n > 0) CHECK(std::abs(st.at(n, 0)) < 1e-14);
    }
    CHECK(st.at(1, 1).real() == doctest::Approx(-1.0));
}

TEST_CASE("entangled state vacuum amplitude") {
    Complex xi{0.8, -0.3};
    TwoModeState st = build_entangled_state(xi, {30});
    CHECK(std::abs(st.at(0, 0) - std::exp(-0.5 * std::norm(xi))) < 1e-14);
}

TEST_CASE("tail guard rejects too-small cutoffs") {
    CHECK_THROWS_AS(build_entangled_state({2.5, 0}, {4}), TailTooLarge);
}

TEST_CASE("eigen relation residuals") {
    auto [r1a, r2a] = eigen_residual({0, 0}, {20});
    CHECK(r1a < 1e-14);
    CHECK(r2a < 1e-14);

    auto [r1b, r2b] = eigen_residual({1, 0}, {30});
    CHECK(r1b < 1e-8);
    CHECK(r2b < 1e-8);

    auto [r1c, r2c] = eigen_residual({1, 1}, {40});
    CHECK(r1c < 1e-8);
    CHECK(r2c < 1e-8);

    // Residual stays at the floor as the cutoff grows.
    auto [r1d, r2d] = eigen_residual({1, 0}, {35});
    CHECK(r1d <= std::max(r1b, 1e-14));
}

TEST_CASE("amplitude recurrence from the eigen relation") {
    Complex xi{0.9, 0.4};
    const long N = 25;
    TwoModeState st = build_entangled_state(xi, {N}, 1e-6);
    for (long m = 0; m + 1 <= N; ++m) {
        for (long n = 0; n <= N; ++n) {
            if (m + n > N - 2) continue;
            Complex lhs = xi * st.at(m, n);
            Complex rhs = std::sqrt(m + 1.0) * st.at(m + 1, n);
            if (n > 0) rhs += std::sqrt(static_cast<double>(n)) * st.at(m, n - 1);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("overlap with Fock states") {
    CHECK(std::abs(overlap_fock({0.3, 0.7}, 0, 0) -
                   std::exp(-0.5 * std::norm(Complex{0.3, 0.7}))) < 1e-14);
    CHECK(overlap_fock({0, 0}, 2, 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(overlap_fock({1, 0}, 1, 1)) < 1e-14);

    // Inner product with constructed vectors, m,n <= 10, |xi| <= 2.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.4, 1.4);
    for (int iter = 0; iter < 6; ++iter) {
        Complex xi{dist(rng), dist(rng)};
        TwoModeState st = build_entangled_state(xi, {40});
        for (long m = 0; m <= 10; m += 3) {
            for (long n = 0; n <= 10; n += 4) {
                TwoModeState fock(40);
                fock.at(m, n) = 1.0;
                // <xi|m,n>
                Complex direct = st.inner(fock);
                CHECK(std::abs(direct - overlap_fock(xi, m, n)) < 1e-12);
            }
        }
    }
}

TEST_CASE("commutator faithfulness on the truncated matrix") {
    const long N = 12;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TwoModeState st(N);
    for (long na = 0; na <= N - 1; ++na)
        for (long nb = 0; nb <= N; ++nb) st.at(na, nb) = Complex{dist(rng), dist(rng)};
    // [a, a+] acts as identity below the boundary row.
    TwoModeState x = st.apply_letter(Letter::ADag).apply_letter(Letter::A);
    TwoModeState y = st.apply_letter(Letter::A).apply_letter(Letter::ADag);
    for (long na = 0; na <= N - 1; ++na)
        for (long nb = 0; nb <= N; ++nb)
            CHECK(std::abs((x.at(na, nb) - y.at(na, nb)) - st.at(na, nb)) < 1e-12);
}

TEST_CASE("apply_operator_poly basics") {
    const long N = 10;
    TwoModeState st(N);
    st.at(1, 0) = 1.0;

    OperatorPoly ident = OperatorPoly::identity(Ordering::Normal);
    TwoModeState same = apply_operator_poly(ident, st);
    CHECK(std::abs(same.at(1, 0) - 1.0) < 1e-15);

    OperatorPoly number(Ordering::Normal);
    number.add_term({.adag = 1, .bdag = 0, .a = 1, .b = 0}, 1);
    TwoModeState out = apply_operator_poly(number, st);
    CHECK(std::abs(out.at(1, 0) - 1.0) < 1e-14);

    // normal form of a a+ on vacuum: (a+a + 1)|00> = |00>
    OperatorWord w;
    w.letters = {Letter::A, Letter::ADag};
    TwoModeState vac(N);
    vac.at(0, 0) = 1.0;
    TwoModeState r = apply_operator_poly(normal_order(w), vac);
    CHECK(std::abs(r.at(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("photon-subtracted squeezed vacuum state identity") {
    CHECK(psv_state_residual(0, SqueezeParam::from_tau(0.5), {40}) == doctest::Approx(0.0));
    CHECK(psv_state_residual(1, SqueezeParam::from_tau(0.5), {40}) < 1e-12);
    CHECK(psv_state_residual(3, SqueezeParam::from_tau(0.3), {40}) < 1e-10);
    CHECK_THROWS_AS(psv_state_residual(1, SqueezeParam::from_tau(0.9), {10}), TailTooLarge);
}

TEST_CASE("psv norm: closed sums and the published value") {
    // m = 0, tau = 0.5: geometric series 4/3; ratio = cosh^2 lambda = 4/3.
    PsvNorm r0 = psv_norm_squared(0, SqueezeParam::from_tau(0.5), {40});
    CHECK(r0.numeric == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(r0.published_value == doctest::Approx(1.0));
    CHECK(r0.ratio == doctest::Approx(4.0 / 3.0));

    // m = 1, tau = 0.5: numeric 20/27, published 5/9, ratio 4/3.
    PsvNorm r1 = psv_norm_squared(1, SqueezeParam::from_tau(0.5), {60});
    CHECK(r1.numeric == doctest::Approx(20.0 / 27.0).epsilon(1e-10));
    CHECK(r1.published_value == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    CHECK(r1.ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

    // Vacuum limit.
    PsvNorm rt = psv_norm_squared(0, SqueezeParam::from_tau(1e-9), {40});
    CHECK(rt.numeric == doctest::Approx(1.0));
    CHECK(rt.ratio == doctest::Approx(1.0));

    // The matrix route agrees with the direct sum.
    for (long m = 0; m <= 3; ++m) {
        PsvNorm r = psv_norm_squared(m, SqueezeParam::from_tau(0.3), {40});
        CHECK(std::abs(r.numeric - r.matrix) <= 1e-10 * std::max(1.0, r.numeric));
    }
}

TEST_CASE("psv norm converges geometrically in the cutoff") {
    double prev_gap = 1e9;
    double limit = psv_norm_squared(1, SqueezeParam::from_tau(0.5), {80}).numeric;
    for (long N : {20, 30, 40}) {
        double v = psv_norm_squared(1, SqueezeParam::from_tau(0.5), {N}).numeric;
        double gap = limit - v;
        CHECK(gap >= -1e-12);  // monotone increasing
        CHECK(gap <= prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("completeness Gram matrix") {
    CHECK(completeness_gram(0, 8) < 1e-13);
    CHECK(completeness_gram(4, 24) < 1e-12);
    CHECK_THROWS_AS(completeness_gram(10, 4), std::domain_error);
}
