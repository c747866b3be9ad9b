#include "tvhp/fock_numeric.hpp"

#include "tvhp/gauss_quad.hpp"

#include <cmath>
#include <numbers>

namespace tvhp {

namespace {

double sqrt_factorial(long n) {
    double r = 1.0;
    for (long k = 2; k <= n; ++k) r *= std::sqrt(static_cast<double>(k));
    return r;
}

}  // namespace

double SqueezeParam::tau() const { return std::tanh(lambda); }

SqueezeParam SqueezeParam::from_tau(double tau) {
    if (std::abs(tau) >= 1.0) throw std::domain_error("SqueezeParam: requires |tau| < 1");
    return {std::atanh(tau)};
}

double TwoModeState::norm() const {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

double TwoModeState::norm_on_block(long max_total) const {
    double s = 0.0;
    for (long na = 0; na <= N_; ++na)
        for (long nb = 0; nb <= N_; ++nb)
            if (na + nb <= max_total) s += std::norm(at(na, nb));
    return std::sqrt(s);
}

TwoModeState& TwoModeState::operator+=(const TwoModeState& o) {
    if (o.N_ != N_) throw std::invalid_argument("TwoModeState: cutoff mismatch");
    for (size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
    return *this;
}

TwoModeState& TwoModeState::operator-=(const TwoModeState& o) {
    if (o.N_ != N_) throw std::invalid_argument("TwoModeState: cutoff mismatch");
    for (size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
    return *this;
}

TwoModeState& TwoModeState::operator*=(Complex c) {
    for (Complex& a : amps_) a *= c;
    return *this;
}

Complex TwoModeState::inner(const TwoModeState& o) const {
    if (o.N_ != N_) throw std::invalid_argument("TwoModeState: cutoff mismatch");
    Complex s = 0.0;
    for (size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * o.amps_[i];
    return s;
}

TwoModeState TwoModeState::apply_letter(Letter l) const {
    TwoModeState out(N_);
    for (long na = 0; na <= N_; ++na) {
        for (long nb = 0; nb <= N_; ++nb) {
            switch (l) {
                case Letter::A:
                    if (na < N_) out.at(na, nb) = std::sqrt(na + 1.0) * at(na + 1, nb);
                    break;
                case Letter::ADag:
                    if (na > 0) out.at(na, nb) = std::sqrt(static_cast<double>(na)) * at(na - 1, nb);
                    break;
                case Letter::B:
                    if (nb < N_) out.at(na, nb) = std::sqrt(nb + 1.0) * at(na, nb + 1);
                    break;
                case Letter::BDag:
                    if (nb > 0) out.at(na, nb) = std::sqrt(static_cast<double>(nb)) * at(na, nb - 1);
                    break;
            }
        }
    }
    return out;
}

TwoModeState build_entangled_state(Complex xi, FockCutoff cutoff, double tail_tol) {
    const long N = cutoff.N;
    TwoModeState st(N);
    const double gauss = std::exp(-0.5 * std::norm(xi));
    for (long m = 0; m <= N; ++m) {
        for (long n = 0; n <= N; ++n) {
            st.at(m, n) = gauss * hermite_eval(m, n, xi) / (sqrt_factorial(m) * sqrt_factorial(n));
        }
    }
    // The diagonal (pair-creation) part of the state never decays, so the
    // boundary amplitude itself is no tail measure.  What must be small is the
    // displacement part at the cutoff: a coherent-style estimate
    // e^{-|xi|^2/2} |xi|^N / sqrt(N!).
    double tail = gauss;
    const double axi = std::abs(xi);
    for (long k = 1; k <= N; ++k) tail *= axi / std::sqrt(static_cast<double>(k));
    if (N > 0 && tail > tail_tol)
        throw TailTooLarge("build_entangled_state: displacement tail estimate " +
                           std::to_string(tail));
    return st;
}

std::pair<double, double> eigen_residual(Complex xi, FockCutoff cutoff, double tail_tol) {
    TwoModeState st = build_entangled_state(xi, cutoff, tail_tol);
    const double nrm = st.norm();

    TwoModeState lhs1 = st.apply_letter(Letter::A);
    lhs1 += st.apply_letter(Letter::BDag);
    TwoModeState ref1 = st;
    ref1 *= xi;
    lhs1 -= ref1;

    TwoModeState lhs2 = st.apply_letter(Letter::ADag);
    lhs2 += st.apply_letter(Letter::B);
    TwoModeState ref2 = st;
    ref2 *= std::conj(xi);
    lhs2 -= ref2;

    const long guarded = cutoff.N - 2;
    return {lhs1.norm_on_block(guarded) / nrm, lhs2.norm_on_block(guarded) / nrm};
}

Complex overlap_fock(Complex xi, long m, long n) {
    if (m < 0 || n < 0) throw std::domain_error("overlap_fock: negative degree");
    return std::exp(-0.5 * std::norm(xi)) * std::conj(hermite_eval(m, n, xi)) /
           (sqrt_factorial(m) * sqrt_factorial(n));
}

TwoModeState apply_operator_poly(const OperatorPoly& op, const TwoModeState& state) {
    long max_word = 0;
    for (const auto& [m, c] : op.terms()) max_word = std::max(max_word, m.word_length());
    if (max_word > state.cutoff())
        throw CutoffViolation("apply_operator_poly: word length exceeds cutoff");

    TwoModeState out(state.cutoff());
    const bool normal = op.ordering() == Ordering::Normal;
    for (const auto& [m, c] : op.terms()) {
        TwoModeState cur = state;
        // Rightmost letters of the ordered monomial act first.
        if (normal) {
            for (long k = 0; k < m.b; ++k) cur = cur.apply_letter(Letter::B);
            for (long k = 0; k < m.a; ++k) cur = cur.apply_letter(Letter::A);
            for (long k = 0; k < m.bdag; ++k) cur = cur.apply_letter(Letter::BDag);
            for (long k = 0; k < m.adag; ++k) cur = cur.apply_letter(Letter::ADag);
        } else {
            for (long k = 0; k < m.bdag; ++k) cur = cur.apply_letter(Letter::BDag);
            for (long k = 0; k < m.adag; ++k) cur = cur.apply_letter(Letter::ADag);
            for (long k = 0; k < m.b; ++k) cur = cur.apply_letter(Letter::B);
            for (long k = 0; k < m.a; ++k) cur = cur.apply_letter(Letter::A);
        }
        cur *= c.to_complex();
        out += cur;
    }
    return out;
}

namespace {

/// e^{a+b+ tau}|00> = sum_n tau^n |n,n> on the truncated basis.
TwoModeState squeezed_kernel(double tau, long N) {
    TwoModeState st(N);
    double t = 1.0;
    for (long n = 0; n <= N; ++n) {
        st.at(n, n) = t;
        t *= tau;
    }
    return st;
}

}  // namespace

double psv_state_residual(long m, SqueezeParam sq, FockCutoff cutoff) {
    const double tau = sq.tau();
    const long N = cutoff.N;
    if (std::pow(tau * tau, static_cast<double>(N)) * std::pow(static_cast<double>(N), 2 * m) >
        1e-6)
        throw TailTooLarge("psv_state_residual: cutoff too small for tau");

    TwoModeState kernel = squeezed_kernel(tau, N);

    TwoModeState lhs = kernel;
    for (long k = 0; k < m; ++k) lhs = lhs.apply_letter(Letter::A);
    for (long k = 0; k < m; ++k) lhs = lhs.apply_letter(Letter::B);

    // m! tau^m L_m(-a+b+ tau) e^{a+b+ tau}|00>, with L_m expanded in powers of (a+b+).
    TwoModeState rhs(N);
    TwoModeState pair_pow = kernel;  // (a+b+)^k kernel
    for (long k = 0; k <= m; ++k) {
        double ck = binomial(m, k).convert_to<double>() / factorial(k).convert_to<double>();
        // (-1)^k from L_m times (-tau)^k from the argument: (+tau)^k overall.
        double coef = ck * std::pow(tau, static_cast<double>(k));
        for (long na = 0; na <= N; ++na)
            for (long nb = 0; nb <= N; ++nb) rhs.at(na, nb) += coef * pair_pow.at(na, nb);
        if (k < m) {
            pair_pow = pair_pow.apply_letter(Letter::BDag);
            pair_pow = pair_pow.apply_letter(Letter::ADag);
        }
    }
    double scale = factorial(m).convert_to<double>() * std::pow(tau, static_cast<double>(m));
    rhs *= scale;

    TwoModeState diff = lhs;
    diff -= rhs;
    // Guard band: the LHS word a^m b^m and the RHS creation pairs both reach
    // 2m letters; trust the block with total photon number <= N - 2m.
    const double denom = lhs.norm();
    return denom == 0.0 ? diff.norm() : diff.norm_on_block(N - 2 * m) / denom;
}

PsvNorm psv_norm_squared(long m, SqueezeParam sq, FockCutoff cutoff) {
    const double tau = sq.tau();
    const long N = cutoff.N;
    if (std::pow(tau * tau, static_cast<double>(N)) * std::pow(static_cast<double>(N), 2 * m) >
        1e-6)
        throw TailTooLarge("psv_norm_squared: cutoff too small for tau");

    // Direct sum: sum_{n>=m} [n!/(n-m)!]^2 tau^{2n}.
    double numeric = 0.0;
    for (long n = m; n <= N; ++n) {
        double falling = 1.0;
        for (long k = 0; k < m; ++k) falling *= static_cast<double>(n - k);
        numeric += falling * falling * std::pow(tau * tau, static_cast<double>(n));
    }

    // Independent route: norm^2 of the constructed state vector.
    TwoModeState st = squeezed_kernel(tau, N);
    for (long k = 0; k < m; ++k) st = st.apply_letter(Letter::A);
    for (long k = 0; k < m; ++k) st = st.apply_letter(Letter::B);
    double matrix = st.norm() * st.norm();

    const double lambda = sq.lambda;
    double published = factorial(m).convert_to<double>() * factorial(m).convert_to<double>() *
                   std::pow(std::sinh(lambda), 2.0 * m) *
                   legendre_eval(m, std::cosh(2.0 * lambda)).real();
    return {numeric, matrix, published, numeric / published};
}

double completeness_gram(long basis_max, long quad_order) {
    if (quad_order < basis_max + 2)
        throw std::domain_error("completeness_gram: quadrature order too small");
    const HermiteRule rule(static_cast<int>(quad_order));
    const long d = basis_max + 1;
    const long dim = d * d;
    std::vector<Complex> gram(dim * dim, 0.0);

    for (int ix = 0; ix < rule.order(); ++ix) {
        for (int iy = 0; iy < rule.order(); ++iy) {
            const Complex xi{rule.nodes()[ix], rule.nodes()[iy]};
            const double w = rule.weights()[ix] * rule.weights()[iy];
            // <m,n|xi> at weight-stripped xi: the e^{-|xi|^2} factor is the GH weight.
            std::vector<Complex> brav(dim);
            for (long m = 0; m <= basis_max; ++m)
                for (long n = 0; n <= basis_max; ++n)
                    brav[m * d + n] =
                        hermite_eval(m, n, xi) / (sqrt_factorial(m) * sqrt_factorial(n));
            for (long r = 0; r < dim; ++r)
                for (long c = 0; c < dim; ++c)
                    gram[r * dim + c] += w * brav[r] * std::conj(brav[c]);
        }
    }
    double max_dev = 0.0;
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            Complex expect = (r == c) ? 1.0 : 0.0;
            max_dev = std::max(max_dev, std::abs(gram[r * dim + c] / std::numbers::pi - expect));
        }
    return max_dev;
}

}  // namespace tvhp
