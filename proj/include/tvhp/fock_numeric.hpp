#pragma once

#include "tvhp/boson_algebra.hpp"
#include "tvhp/hermite_core.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace tvhp {

struct TailTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CutoffViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-mode photon number cutoff; basis dimension (N+1)^2.
struct FockCutoff {
    long N;
};

struct SqueezeParam {
    double lambda = 0.0;
    double tau() const;  // tanh(lambda)

    static SqueezeParam from_tau(double tau);
};

/// Amplitudes on the truncated two-mode Fock basis |n_a, n_b>.
class TwoModeState {
public:
    explicit TwoModeState(long N) : N_(N), amps_((N + 1) * (N + 1)) {
        if (N < 1) throw std::domain_error("TwoModeState: cutoff must be >= 1");
    }

    long cutoff() const { return N_; }
    Complex& at(long na, long nb) { return amps_[na * (N_ + 1) + nb]; }
    Complex at(long na, long nb) const { return amps_[na * (N_ + 1) + nb]; }

    double norm() const;
    /// Norm restricted to total photon number n_a + n_b <= max_total.
    double norm_on_block(long max_total) const;

    TwoModeState& operator+=(const TwoModeState& o);
    TwoModeState& operator-=(const TwoModeState& o);
    TwoModeState& operator*=(Complex c);

    Complex inner(const TwoModeState& o) const;  // <this|o>

    /// Single ladder actions; amplitudes that would leave the truncation are dropped.
    TwoModeState apply_letter(Letter l) const;

private:
    long N_;
    std::vector<Complex> amps_;
};

/// |xi> expanded on the Fock basis: amps(m,n) = e^{-|xi|^2/2} H_{m,n}(xi,xi*)/sqrt(m!n!).
TwoModeState build_entangled_state(Complex xi, FockCutoff cutoff, double tail_tol = 1e-10);

/// Residuals of (a+b+)|xi> = xi|xi> and (a++b)|xi> = xi*|xi>, relative,
/// on the guard-banded block (total photon number <= N-2).
std::pair<double, double> eigen_residual(Complex xi, FockCutoff cutoff, double tail_tol = 1e-10);

/// <xi|m,n> = e^{-|xi|^2/2} conj(H_{m,n}(xi,xi*)) / sqrt(m! n!).
Complex overlap_fock(Complex xi, long m, long n);

/// Matrix action of an ordered operator polynomial; the state must leave a
/// guard band at least as wide as the longest monomial word.
TwoModeState apply_operator_poly(const OperatorPoly& op, const TwoModeState& state);

/// Relative residual of a^m b^m e^{a+b+ tau}|00> = m! tau^m L_m(-a+b+ tau) e^{a+b+ tau}|00>.
double psv_state_residual(long m, SqueezeParam sq, FockCutoff cutoff);

struct PsvNorm {
    double numeric;      // direct truncated sum  sum_{n>=m} [n!/(n-m)!]^2 tau^{2n}
    double matrix;       // same quantity from the constructed state vector
    double published_value;  // (m!)^2 sinh^{2m}(lambda) P_m(cosh 2 lambda)
    double ratio;        // numeric / published_value
};

/// Squared norm of the photon-subtracted squeezed vacuum, with the published
/// closed form reported alongside for comparison.
PsvNorm psv_norm_squared(long m, SqueezeParam sq, FockCutoff cutoff);

/// Max deviation from identity of the Gram matrix
/// M[(m,n),(m',n')] = int d^2xi/pi <m,n|xi><xi|m',n'> over the block m,n,m',n' <= basis_max.
double completeness_gram(long basis_max, long quad_order);

}  // namespace tvhp
