#pragma once

#include "tvhp/bivariate_poly.hpp"

#include <complex>

namespace tvhp {

using Complex = std::complex<double>;

/// Expansion parameters for the generating-function residuals.
struct GenParams {
    Complex t{};
    Complex t_prime{};
    Complex s{};
};

/// H_{m,n}(u,v) = sum_{l=0}^{min(m,n)} (-1)^l m! n! / (l!(m-l)!(n-l)!) u^{m-l} v^{n-l}.
/// Exact integer coefficients, memoized per (m,n); safe for concurrent callers.
const BivariatePoly& hermite_coeffs(long m, long n);

Complex hermite_eval(long m, long n, Complex u, Complex v);

/// H_{m,n}(xi, xi*) convenience entry point.
inline Complex hermite_eval(long m, long n, Complex xi) {
    return hermite_eval(m, n, xi, std::conj(xi));
}

/// L_m(x) from the closed sum L_m(x) = sum_k (-1)^k C(m,k) x^k / k!.
/// Deliberately independent of the TVHP path.
Complex laguerre_eval(long m, Complex x);

/// Exact Laguerre coefficients as a polynomial in a single slot (u-exponent; v unused).
BivariatePoly laguerre_coeffs(long m);

/// P_m(x) = sum_{l=0}^{floor(m/2)} (-1)^l (2m-2l)! x^{m-2l} / (2^m l! (m-l)! (m-2l)!).
Complex legendre_eval(long m, Complex x);

/// |H_{m,m}(x,y) - (-1)^m m! L_m(xy)| at a numeric point.
double check_laguerre_relation(long m, Complex x, Complex y);

/// Exact variant: H_{m,m}(u,v) - (-1)^m m! L_m(uv) as a polynomial difference.
BivariatePoly laguerre_relation_difference(long m);

/// |sum_{m,n<=M} t^m t'^n H_{m,n}(u,v)/(m!n!) - exp(-t t' + t u + t' v)|.
double residual_genfunc_single(const GenParams& p, Complex u, Complex v, long M);

/// |sum_{m,n<=M} s^m t^n H_{m,n}(x,y) H_{m,n}(x',y')/(m!n!)
///   - (1-ts)^{-1} exp([s x x' + t y y' - ts(xy + x'y')]/(1-ts))|.
/// Throws std::domain_error when |ts| >= 1.
double residual_genfunc_double(const GenParams& p, Complex x, Complex y, Complex xp,
                               Complex yp, long M);

/// Fixed-m single sum against its closed form:
/// |sum_{n<=M} t^n H_{m,n}(x,y) H_{m,n}(x',y')/n!
///   - (-t)^m e^{t y y'} H_{m,m}(i(sqrt(t) y' - x/sqrt(t)), i(sqrt(t) y - x'/sqrt(t)))|.
/// Restricted to real t > 0 (positive square root); throws std::domain_error otherwise.
double residual_genfunc_fixed_m(long m, double t, Complex x, Complex y, Complex xp,
                                Complex yp, long M);

/// |sum_{m<=M} L_m(x) s^m - (1-s)^{-1} exp(-xs/(1-s))|.
/// Throws std::domain_error when |s| >= 1.
double residual_laguerre_genfunc(Complex s, Complex x, long M);

}  // namespace tvhp
