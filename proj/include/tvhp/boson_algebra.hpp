#pragma once

#include "tvhp/bivariate_poly.hpp"
#include "tvhp/gaussian_rational.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvhp {

enum class Ordering { Normal, Antinormal };

/// Exponents of a two-mode boson monomial. How the letters are arranged
/// depends on the ordering tag of the owning polynomial:
///   Normal:     adag^p bdag^q a^r b^s
///   Antinormal: a^r b^s adag^p bdag^q
struct BosonMonomial {
    long adag = 0;
    long bdag = 0;
    long a = 0;
    long b = 0;

    long word_length() const { return adag + bdag + a + b; }

    friend auto operator<=>(const BosonMonomial&, const BosonMonomial&) = default;
};

enum class Letter { A, ADag, B, BDag };

/// A plain product of mode letters with a scalar prefactor.
struct OperatorWord {
    std::vector<Letter> letters;
    GaussianRational coefficient{1};

    /// Grammar: tokens `a`, `a+`, `b`, `b+`, optional `^k` powers, optional
    /// complex rational prefix `(p/q+r/s i)`. Whitespace ignored.
    static OperatorWord parse(std::string_view text);
};

struct NonCommutingArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativePowerSurvives : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical ordered sum of boson monomials with exact coefficients.
class OperatorPoly {
public:
    using TermMap = std::map<BosonMonomial, GaussianRational>;

    explicit OperatorPoly(Ordering ord = Ordering::Normal) : ordering_(ord) {}

    static OperatorPoly identity(Ordering ord) {
        OperatorPoly p(ord);
        p.add_term({}, 1);
        return p;
    }
    static OperatorPoly monomial(Ordering ord, BosonMonomial m, GaussianRational c = 1) {
        OperatorPoly p(ord);
        p.add_term(m, std::move(c));
        return p;
    }

    Ordering ordering() const { return ordering_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const BosonMonomial& m, GaussianRational c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    OperatorPoly& operator+=(const OperatorPoly& o);
    OperatorPoly& operator-=(const OperatorPoly& o);
    friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
    friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }

    OperatorPoly scaled(const GaussianRational& c) const;

    /// True operator product; both factors must carry the same ordering tag
    /// and the result is re-canonicalized in that ordering.
    friend OperatorPoly mul_operator(const OperatorPoly& a, const OperatorPoly& b);

    /// Product inside the ordering symbol, where all letters commute.
    friend OperatorPoly mul_within_symbol(const OperatorPoly& a, const OperatorPoly& b);

    /// Re-expresses the same operator in the other canonical ordering.
    OperatorPoly to_ordering(Ordering target) const;

    /// Equality as operators: same ordering tag and identical term maps.
    friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) {
        return a.ordering_ == b.ordering_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    Ordering ordering_;
    TermMap terms_;
};

OperatorPoly normal_order(const OperatorWord& word);
OperatorPoly antinormal_order(const OperatorWord& word);

/// Evaluates a commuting-indeterminate polynomial at operator arguments and
/// returns the normal-ordered expansion. The arguments must commute as
/// operators; NonCommutingArguments is thrown otherwise.
OperatorPoly substitute_and_expand(const BivariatePoly& poly, const OperatorPoly& u_op,
                                   const OperatorPoly& v_op);

/// Outcome of an exact symbolic check: pass iff the difference vanished.
struct ExactVerdict {
    bool pass = false;
    std::string detail;  // printable difference when the check fails
};

/// H_{m,n}(a+b+, a++b) = :(a+b+)^m (a++b)^n:
ExactVerdict check_identity_normal(long m, long n);

/// H_{m,n}(a+b+, a++b) = 2^{(m+n)/2} antinormal{ H_{m,n}((a+b+)/sqrt2, (a++b)/sqrt2) }.
/// The sqrt2 powers combine to exact integer powers of two per TVHP term.
ExactVerdict check_identity_antinormal_scaled(long m, long n);

/// (a+b+)^m (a++b)^n = i^{m+n} :H_{m,n}(-i(a+b+), -i(a++b)):
ExactVerdict check_identity_reciprocal(long m, long n);

/// a^n adag^m = (-i)^{m+n} :H_{m,n}(i adag, i a):
ExactVerdict check_identity_single_mode(long m, long n);

/// antinormal{ H_{m,n}(adag, a) } = adag^m a^n
ExactVerdict check_identity_antinormal_single(long m, long n);

/// e^{s ab} e^{t adag bdag} = (1-ts)^{-1} :exp([ts(adag a + bdag b) + s adag bdag + t ab]/(1-ts)):
/// order-by-order in (s,t) up to total degree K.
ExactVerdict check_factorization_normal(long K);

/// e^{t adag bdag} e^{s ab} = (1-ts)^{-1} antinormal-exp([-ts(adag a + bdag b) + t adag bdag + s ab]/(1-ts))
/// order-by-order in (s,t) up to total degree K.
ExactVerdict check_factorization_antinormal(long K);

/// a^m b^m e^{adag bdag tau} = m! tau^m e^{adag bdag tau} :L_m(-adag a - bdag b - ab/tau - adag bdag tau):
/// as formal Laurent series in tau up to degree K. Throws NegativePowerSurvives
/// if any negative tau power fails to cancel on the right-hand side.
ExactVerdict check_identity_laguerre_operator(long m, long K);

}  // namespace tvhp
