#include "tvhp/boson_algebra.hpp"

#include "tvhp/hermite_core.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace tvhp {

namespace {

GaussianRational inv_int(const BigInt& n) { return GaussianRational{BigRational{1, n}}; }

/// C(x,k) C(y,k) k!  -- the contraction weight for crossing k ladder pairs.
GaussianRational crossing_weight(long x, long y, long k) {
    return GaussianRational{BigRational{binomial(x, k) * binomial(y, k) * factorial(k)}};
}

}  // namespace

std::string GaussianRational::str() const {
    std::ostringstream os;
    os << re_;
    if (im_ != 0) os << (im_ > 0 ? "+" : "") << im_ << "i";
    return os.str();
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

OperatorPoly OperatorPoly::scaled(const GaussianRational& c) const {
    OperatorPoly r(ordering_);
    if (c.is_zero()) return r;
    for (const auto& [m, t] : terms_) r.terms_.emplace(m, t * c);
    return r;
}

std::string OperatorPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        auto letter = [&](const char* name, long e) {
            if (e > 0) {
                os << " " << name;
                if (e > 1) os << "^" << e;
            }
        };
        if (ordering_ == Ordering::Normal) {
            letter("a+", m.adag);
            letter("b+", m.bdag);
            letter("a", m.a);
            letter("b", m.b);
        } else {
            letter("a", m.a);
            letter("b", m.b);
            letter("a+", m.adag);
            letter("b+", m.bdag);
        }
    }
    return os.str();
}

OperatorPoly mul_operator(const OperatorPoly& lhs, const OperatorPoly& rhs) {
    if (lhs.ordering_ != rhs.ordering_)
        throw std::logic_error("mul_operator: mixed ordering tags");
    const bool normal = lhs.ordering_ == Ordering::Normal;
    OperatorPoly out(lhs.ordering_);
    for (const auto& [m1, c1] : lhs.terms_) {
        for (const auto& [m2, c2] : rhs.terms_) {
            const GaussianRational c = c1 * c2;
            // Crossing counts for the a and b modes through the middle of the product.
            const long xa = normal ? m1.a : m1.adag;
            const long ya = normal ? m2.adag : m2.a;
            const long xb = normal ? m1.b : m1.bdag;
            const long yb = normal ? m2.bdag : m2.b;
            for (long ka = 0; ka <= std::min(xa, ya); ++ka) {
                for (long kb = 0; kb <= std::min(xb, yb); ++kb) {
                    GaussianRational w =
                        c * crossing_weight(xa, ya, ka) * crossing_weight(xb, yb, kb);
                    if (!normal && (ka + kb) % 2 != 0) w = -w;
                    out.add_term({m1.adag + m2.adag - ka, m1.bdag + m2.bdag - kb,
                                  m1.a + m2.a - ka, m1.b + m2.b - kb},
                                 w);
                }
            }
        }
    }
    return out;
}

OperatorPoly mul_within_symbol(const OperatorPoly& lhs, const OperatorPoly& rhs) {
    if (lhs.ordering_ != rhs.ordering_)
        throw std::logic_error("mul_within_symbol: mixed ordering tags");
    OperatorPoly out(lhs.ordering_);
    for (const auto& [m1, c1] : lhs.terms_)
        for (const auto& [m2, c2] : rhs.terms_)
            out.add_term({m1.adag + m2.adag, m1.bdag + m2.bdag, m1.a + m2.a, m1.b + m2.b},
                         c1 * c2);
    return out;
}

OperatorPoly OperatorPoly::to_ordering(Ordering target) const {
    if (target == ordering_) return *this;
    const bool from_normal = ordering_ == Ordering::Normal;
    OperatorPoly out(target);
    for (const auto& [m, c] : terms_) {
        for (long ka = 0; ka <= std::min(m.adag, m.a); ++ka) {
            for (long kb = 0; kb <= std::min(m.bdag, m.b); ++kb) {
                GaussianRational w =
                    c * crossing_weight(m.adag, m.a, ka) * crossing_weight(m.bdag, m.b, kb);
                if (from_normal && (ka + kb) % 2 != 0) w = -w;
                out.add_term({m.adag - ka, m.bdag - kb, m.a - ka, m.b - kb}, w);
            }
        }
    }
    return out;
}

OperatorPoly normal_order(const OperatorWord& word) {
    OperatorPoly p = OperatorPoly::identity(Ordering::Normal).scaled(word.coefficient);
    for (Letter l : word.letters) {
        OperatorPoly next(Ordering::Normal);
        for (const auto& [m, c] : p.terms()) {
            switch (l) {
                case Letter::A:
                    next.add_term({m.adag, m.bdag, m.a + 1, m.b}, c);
                    break;
                case Letter::B:
                    next.add_term({m.adag, m.bdag, m.a, m.b + 1}, c);
                    break;
                case Letter::ADag:
                    next.add_term({m.adag + 1, m.bdag, m.a, m.b}, c);
                    if (m.a > 0)
                        next.add_term({m.adag, m.bdag, m.a - 1, m.b}, c * GaussianRational{m.a});
                    break;
                case Letter::BDag:
                    next.add_term({m.adag, m.bdag + 1, m.a, m.b}, c);
                    if (m.b > 0)
                        next.add_term({m.adag, m.bdag, m.a, m.b - 1}, c * GaussianRational{m.b});
                    break;
            }
        }
        p = std::move(next);
    }
    return p;
}

OperatorPoly antinormal_order(const OperatorWord& word) {
    OperatorPoly p = OperatorPoly::identity(Ordering::Antinormal).scaled(word.coefficient);
    for (Letter l : word.letters) {
        OperatorPoly next(Ordering::Antinormal);
        for (const auto& [m, c] : p.terms()) {
            switch (l) {
                case Letter::ADag:
                    next.add_term({m.adag + 1, m.bdag, m.a, m.b}, c);
                    break;
                case Letter::BDag:
                    next.add_term({m.adag, m.bdag + 1, m.a, m.b}, c);
                    break;
                case Letter::A:
                    next.add_term({m.adag, m.bdag, m.a + 1, m.b}, c);
                    if (m.adag > 0)
                        next.add_term({m.adag - 1, m.bdag, m.a, m.b},
                                      c * GaussianRational{-m.adag});
                    break;
                case Letter::B:
                    next.add_term({m.adag, m.bdag, m.a, m.b + 1}, c);
                    if (m.bdag > 0)
                        next.add_term({m.adag, m.bdag - 1, m.a, m.b},
                                      c * GaussianRational{-m.bdag});
                    break;
            }
        }
        p = std::move(next);
    }
    return p;
}

// ---------------------------------------------------------------------------
// word grammar

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

BigRational parse_rational(std::string_view& s) {
    skip_ws(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
        digits.push_back(s.front());
        s.remove_prefix(1);
    }
    if (digits.empty()) throw std::invalid_argument("OperatorWord: expected number");
    BigInt num{digits};
    BigInt den = 1;
    if (!s.empty() && s.front() == '/') {
        s.remove_prefix(1);
        std::string d;
        while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
            d.push_back(s.front());
            s.remove_prefix(1);
        }
        if (d.empty()) throw std::invalid_argument("OperatorWord: expected denominator");
        den = BigInt{d};
    }
    BigRational r{num, den};
    return neg ? -r : r;
}

GaussianRational parse_prefix(std::string_view& s) {
    // inside '(': R, R+Si, R-Si, Si, i, -i ...
    skip_ws(s);
    BigRational re = 0, im = 0;
    if (!s.empty() && (s.front() == 'i')) {
        s.remove_prefix(1);
        im = 1;
    } else {
        BigRational first = parse_rational(s);
        skip_ws(s);
        if (!s.empty() && s.front() == 'i') {
            s.remove_prefix(1);
            im = first;
        } else if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
            re = first;
            im = parse_rational(s);
            skip_ws(s);
            if (s.empty() || s.front() != 'i')
                throw std::invalid_argument("OperatorWord: expected 'i' after imaginary part");
            s.remove_prefix(1);
        } else {
            re = first;
        }
    }
    skip_ws(s);
    if (s.empty() || s.front() != ')')
        throw std::invalid_argument("OperatorWord: expected ')'");
    s.remove_prefix(1);
    return {re, im};
}

}  // namespace

OperatorWord OperatorWord::parse(std::string_view text) {
    OperatorWord w;
    skip_ws(text);
    if (!text.empty() && text.front() == '(') {
        text.remove_prefix(1);
        w.coefficient = parse_prefix(text);
    }
    while (true) {
        skip_ws(text);
        if (text.empty()) break;
        char mode = text.front();
        if (mode != 'a' && mode != 'b')
            throw std::invalid_argument("OperatorWord: expected 'a' or 'b'");
        text.remove_prefix(1);
        bool dag = false;
        if (!text.empty() && text.front() == '+') {
            dag = true;
            text.remove_prefix(1);
        }
        long power = 1;
        if (!text.empty() && text.front() == '^') {
            text.remove_prefix(1);
            std::string digits;
            while (!text.empty() && std::isdigit(static_cast<unsigned char>(text.front()))) {
                digits.push_back(text.front());
                text.remove_prefix(1);
            }
            if (digits.empty()) throw std::invalid_argument("OperatorWord: expected exponent");
            power = std::stol(digits);
        }
        Letter l = mode == 'a' ? (dag ? Letter::ADag : Letter::A)
                               : (dag ? Letter::BDag : Letter::B);
        for (long k = 0; k < power; ++k) w.letters.push_back(l);
    }
    return w;
}

// ---------------------------------------------------------------------------
// substitution

namespace {

std::vector<OperatorPoly> operator_powers(const OperatorPoly& base, long max_exp) {
    std::vector<OperatorPoly> pw;
    pw.reserve(max_exp + 1);
    pw.push_back(OperatorPoly::identity(base.ordering()));
    for (long e = 1; e <= max_exp; ++e) pw.push_back(mul_operator(pw.back(), base));
    return pw;
}

/// Powers of a sum of letters expanded inside the ordering symbol.
std::vector<OperatorPoly> symbol_powers(const OperatorPoly& base, long max_exp) {
    std::vector<OperatorPoly> pw;
    pw.reserve(max_exp + 1);
    pw.push_back(OperatorPoly::identity(base.ordering()));
    for (long e = 1; e <= max_exp; ++e) pw.push_back(mul_within_symbol(pw.back(), base));
    return pw;
}

OperatorPoly sum_a_bdag(Ordering ord) {
    OperatorPoly p(ord);
    p.add_term({.adag = 0, .bdag = 0, .a = 1, .b = 0}, 1);
    p.add_term({.adag = 0, .bdag = 1, .a = 0, .b = 0}, 1);
    return p;
}

OperatorPoly sum_adag_b(Ordering ord) {
    OperatorPoly p(ord);
    p.add_term({.adag = 1, .bdag = 0, .a = 0, .b = 0}, 1);
    p.add_term({.adag = 0, .bdag = 0, .a = 0, .b = 1}, 1);
    return p;
}

std::pair<long, long> max_exponents(const BivariatePoly& poly) {
    long mj = 0, mk = 0;
    for (const auto& [key, c] : poly.terms()) {
        mj = std::max(mj, key.first);
        mk = std::max(mk, key.second);
    }
    return {mj, mk};
}

ExactVerdict verdict_from_difference(OperatorPoly diff) {
    ExactVerdict v;
    v.pass = diff.is_zero();
    if (!v.pass) v.detail = diff.str();
    return v;
}

}  // namespace

OperatorPoly substitute_and_expand(const BivariatePoly& poly, const OperatorPoly& u_op,
                                   const OperatorPoly& v_op) {
    OperatorPoly comm = mul_operator(u_op, v_op) - mul_operator(v_op, u_op);
    if (!comm.is_zero())
        throw NonCommutingArguments("substitute_and_expand: arguments do not commute: " +
                                    comm.str());
    auto [mj, mk] = max_exponents(poly);
    auto up = operator_powers(u_op, mj);
    auto vp = operator_powers(v_op, mk);
    OperatorPoly out(u_op.ordering());
    for (const auto& [key, c] : poly.terms())
        out += mul_operator(up[key.first], vp[key.second]).scaled(c);
    return out;
}

// ---------------------------------------------------------------------------
// operator identity checks

ExactVerdict check_identity_normal(long m, long n) {
    const auto& h = hermite_coeffs(m, n);
    OperatorPoly lhs =
        substitute_and_expand(h, sum_a_bdag(Ordering::Normal), sum_adag_b(Ordering::Normal));
    OperatorPoly rhs = mul_within_symbol(symbol_powers(sum_a_bdag(Ordering::Normal), m)[m],
                                         symbol_powers(sum_adag_b(Ordering::Normal), n)[n]);
    return verdict_from_difference(lhs - rhs);
}

ExactVerdict check_identity_antinormal_scaled(long m, long n) {
    const auto& h = hermite_coeffs(m, n);
    OperatorPoly lhs =
        substitute_and_expand(h, sum_a_bdag(Ordering::Normal), sum_adag_b(Ordering::Normal));
    // 2^{(m+n)/2} (1/sqrt2)^{j+k} = 2^l with 2l = m+n-j-k; exact by the TVHP grading.
    auto up = symbol_powers(sum_a_bdag(Ordering::Antinormal), m);
    auto vp = symbol_powers(sum_adag_b(Ordering::Antinormal), n);
    OperatorPoly rhs(Ordering::Antinormal);
    for (const auto& [key, c] : h.terms()) {
        const long twol = m + n - key.first - key.second;
        if (twol % 2 != 0)
            throw std::logic_error("check_identity_antinormal_scaled: odd power of sqrt(2)");
        GaussianRational scale{BigRational{BigInt{1} << (twol / 2)}};
        rhs += mul_within_symbol(up[key.first], vp[key.second]).scaled(c * scale);
    }
    return verdict_from_difference(lhs - rhs.to_ordering(Ordering::Normal));
}

ExactVerdict check_identity_reciprocal(long m, long n) {
    OperatorPoly lhs =
        mul_operator(operator_powers(sum_a_bdag(Ordering::Normal), m)[m],
                     operator_powers(sum_adag_b(Ordering::Normal), n)[n]);
    const auto& h = hermite_coeffs(m, n);
    auto up = symbol_powers(sum_a_bdag(Ordering::Normal), m);
    auto vp = symbol_powers(sum_adag_b(Ordering::Normal), n);
    OperatorPoly rhs(Ordering::Normal);
    for (const auto& [key, c] : h.terms()) {
        // i^{m+n} (-i)^{j+k}
        GaussianRational unit = GaussianRational::unit_power(m + n - key.first - key.second);
        rhs += mul_within_symbol(up[key.first], vp[key.second]).scaled(c * unit);
    }
    return verdict_from_difference(lhs - rhs);
}

ExactVerdict check_identity_single_mode(long m, long n) {
    OperatorWord w;
    w.letters.assign(n, Letter::A);
    w.letters.insert(w.letters.end(), m, Letter::ADag);
    OperatorPoly lhs = normal_order(w);
    OperatorPoly rhs(Ordering::Normal);
    for (const auto& [key, c] : hermite_coeffs(m, n).terms()) {
        // (-i)^{m+n} i^{j+k}
        GaussianRational unit = GaussianRational::unit_power(key.first + key.second - m - n);
        rhs.add_term({.adag = key.first, .bdag = 0, .a = key.second, .b = 0}, c * unit);
    }
    return verdict_from_difference(lhs - rhs);
}

ExactVerdict check_identity_antinormal_single(long m, long n) {
    OperatorPoly lhs(Ordering::Antinormal);
    for (const auto& [key, c] : hermite_coeffs(m, n).terms())
        lhs.add_term({.adag = key.first, .bdag = 0, .a = key.second, .b = 0}, c);
    OperatorPoly rhs(Ordering::Normal);
    rhs.add_term({.adag = m, .bdag = 0, .a = n, .b = 0}, 1);
    return verdict_from_difference(lhs.to_ordering(Ordering::Normal) - rhs);
}

// ---------------------------------------------------------------------------
// formal series in (s,t) and Laurent series in tau

namespace {

/// Truncated scalar power series in (s,t), total degree <= K.
struct ScalarSeries2 {
    long K;
    std::map<std::pair<long, long>, GaussianRational> c;

    void add(long i, long j, const GaussianRational& v) {
        if (i + j > K || v.is_zero()) return;
        auto it = c.find({i, j});
        if (it == c.end()) {
            c.emplace(std::pair{i, j}, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    /// 1/(1-ts) = sum_j (ts)^j.
    static ScalarSeries2 geometric_ts(long K) {
        ScalarSeries2 g{K, {}};
        for (long j = 0; 2 * j <= K; ++j) g.add(j, j, 1);
        return g;
    }
};

/// Truncated operator-valued series; coefficients live inside the ordering
/// symbol, so coefficient products are commutative.
struct OpSeries2 {
    long K;
    Ordering ord;
    std::map<std::pair<long, long>, OperatorPoly> c;

    void add(long i, long j, const OperatorPoly& p) {
        if (i + j > K || p.is_zero()) return;
        auto it = c.find({i, j});
        if (it == c.end()) {
            c.emplace(std::pair{i, j}, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    OperatorPoly coeff(long i, long j) const {
        auto it = c.find({i, j});
        return it == c.end() ? OperatorPoly(ord) : it->second;
    }

    friend OpSeries2 mul(const OpSeries2& a, const OpSeries2& b) {
        OpSeries2 out{a.K, a.ord, {}};
        for (const auto& [ka, pa] : a.c)
            for (const auto& [kb, pb] : b.c)
                out.add(ka.first + kb.first, ka.second + kb.second, mul_within_symbol(pa, pb));
        return out;
    }

    OpSeries2 scaled_series(const ScalarSeries2& s) const {
        OpSeries2 out{K, ord, {}};
        for (const auto& [k, p] : c)
            for (const auto& [ks, v] : s.c)
                out.add(k.first + ks.first, k.second + ks.second, p.scaled(v));
        return out;
    }

    /// exp of a series with no constant term.
    OpSeries2 exponential() const {
        if (c.count({0, 0}))
            throw std::logic_error("OpSeries2::exponential: nonzero constant term");
        OpSeries2 acc{K, ord, {}};
        acc.add(0, 0, OperatorPoly::identity(ord));
        OpSeries2 term = acc;
        for (long k = 1; k <= K; ++k) {
            term = mul(term, *this);
            OpSeries2 scaled{K, ord, {}};
            for (const auto& [key, p] : term.c) scaled.add(key.first, key.second, p.scaled(inv_int(k)));
            term = scaled;
            for (const auto& [key, p] : term.c) acc.add(key.first, key.second, p);
            if (term.c.empty()) break;
        }
        return acc;
    }
};

OperatorPoly ladder_pair(Ordering ord, long adag, long bdag, long a, long b) {
    return OperatorPoly::monomial(ord, {.adag = adag, .bdag = bdag, .a = a, .b = b});
}

ExactVerdict compare_series(const OpSeries2& lhs, const OpSeries2& rhs, long K) {
    for (long i = 0; i <= K; ++i) {
        for (long j = 0; i + j <= K; ++j) {
            OperatorPoly diff = lhs.coeff(i, j) - rhs.coeff(i, j);
            if (!diff.is_zero()) {
                ExactVerdict v;
                v.pass = false;
                std::ostringstream os;
                os << "coefficient s^" << i << " t^" << j << ": " << diff.str();
                v.detail = os.str();
                return v;
            }
        }
    }
    return {.pass = true, .detail = {}};
}

OpSeries2 factorization_lhs(long K, Ordering ord) {
    // Coefficient of s^i t^j in e^{s ab} e^{t a+b+} (normal) resp.
    // e^{t a+b+} e^{s ab} (antinormal): the ordered product of the two pair powers.
    OpSeries2 lhs{K, ord, {}};
    for (long i = 0; i <= K; ++i) {
        for (long j = 0; i + j <= K; ++j) {
            OperatorWord w;
            if (ord == Ordering::Normal) {
                w.letters.assign(i, Letter::A);
                w.letters.insert(w.letters.end(), i, Letter::B);
                w.letters.insert(w.letters.end(), j, Letter::ADag);
                w.letters.insert(w.letters.end(), j, Letter::BDag);
            } else {
                w.letters.assign(j, Letter::ADag);
                w.letters.insert(w.letters.end(), j, Letter::BDag);
                w.letters.insert(w.letters.end(), i, Letter::A);
                w.letters.insert(w.letters.end(), i, Letter::B);
            }
            OperatorPoly p = ord == Ordering::Normal ? normal_order(w) : antinormal_order(w);
            lhs.add(i, j, p.scaled(inv_int(factorial(i) * factorial(j))));
        }
    }
    return lhs;
}

}  // namespace

ExactVerdict check_factorization_normal(long K) {
    OpSeries2 lhs = factorization_lhs(K, Ordering::Normal);

    ScalarSeries2 inv = ScalarSeries2::geometric_ts(K);
    OpSeries2 exponent{K, Ordering::Normal, {}};
    exponent.add(1, 1, ladder_pair(Ordering::Normal, 1, 0, 1, 0) +
                           ladder_pair(Ordering::Normal, 0, 1, 0, 1));  // ts (a+a + b+b)
    exponent.add(0, 1, ladder_pair(Ordering::Normal, 1, 1, 0, 0));      // t a+b+
    exponent.add(1, 0, ladder_pair(Ordering::Normal, 0, 0, 1, 1));      // s ab
    exponent = exponent.scaled_series(inv);
    OpSeries2 rhs = exponent.exponential().scaled_series(inv);

    return compare_series(lhs, rhs, K);
}

ExactVerdict check_factorization_antinormal(long K) {
    OpSeries2 lhs = factorization_lhs(K, Ordering::Antinormal);

    ScalarSeries2 inv = ScalarSeries2::geometric_ts(K);
    OpSeries2 exponent{K, Ordering::Antinormal, {}};
    exponent.add(1, 1, (ladder_pair(Ordering::Antinormal, 1, 0, 1, 0) +
                        ladder_pair(Ordering::Antinormal, 0, 1, 0, 1))
                           .scaled(GaussianRational{-1}));  // -ts (a+a + b+b)
    exponent.add(0, 1, ladder_pair(Ordering::Antinormal, 1, 1, 0, 0));  // t a+b+
    exponent.add(1, 0, ladder_pair(Ordering::Antinormal, 0, 0, 1, 1));  // s ab
    exponent = exponent.scaled_series(inv);
    OpSeries2 rhs = exponent.exponential().scaled_series(inv);

    return compare_series(lhs, rhs, K);
}

namespace {

/// Laurent series in tau with operator coefficients inside the normal-ordering
/// symbol; exponents bounded below by construction and above by K.
struct OpLaurent {
    long K;
    std::map<long, OperatorPoly> c;

    void add(long e, const OperatorPoly& p) {
        if (e > K || p.is_zero()) return;
        auto it = c.find(e);
        if (it == c.end()) {
            c.emplace(e, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    OperatorPoly coeff(long e) const {
        auto it = c.find(e);
        return it == c.end() ? OperatorPoly(Ordering::Normal) : it->second;
    }

    friend OpLaurent mul(const OpLaurent& a, const OpLaurent& b) {
        OpLaurent out{a.K, {}};
        for (const auto& [ea, pa] : a.c)
            for (const auto& [eb, pb] : b.c) out.add(ea + eb, mul_within_symbol(pa, pb));
        return out;
    }
};

}  // namespace

ExactVerdict check_identity_laguerre_operator(long m, long K) {
    if (K < m) throw std::domain_error("check_identity_laguerre_operator: K < m");

    // LHS: coefficient of tau^n is normal_order(a^m b^m a+^n b+^n) / n!.
    OpLaurent lhs{K, {}};
    for (long n = 0; n <= K; ++n) {
        OperatorWord w;
        w.letters.assign(m, Letter::A);
        w.letters.insert(w.letters.end(), m, Letter::B);
        w.letters.insert(w.letters.end(), n, Letter::ADag);
        w.letters.insert(w.letters.end(), n, Letter::BDag);
        lhs.add(n, normal_order(w).scaled(inv_int(factorial(n))));
    }

    // RHS: m! tau^m * e^{a+b+ tau} * :L_m(-a+a - b+b - ab/tau - a+b+ tau):
    OpLaurent arg{K, {}};
    arg.add(0, (ladder_pair(Ordering::Normal, 1, 0, 1, 0) +
                ladder_pair(Ordering::Normal, 0, 1, 0, 1))
                   .scaled(GaussianRational{-1}));
    arg.add(-1, ladder_pair(Ordering::Normal, 0, 0, 1, 1).scaled(GaussianRational{-1}));
    arg.add(1, ladder_pair(Ordering::Normal, 1, 1, 0, 0).scaled(GaussianRational{-1}));

    OpLaurent lag{K, {}};
    OpLaurent arg_pow{K, {}};
    arg_pow.add(0, OperatorPoly::identity(Ordering::Normal));
    for (long k = 0; k <= m; ++k) {
        GaussianRational ck{BigRational{binomial(m, k), factorial(k)}};
        if (k % 2 != 0) ck = -ck;
        for (const auto& [e, p] : arg_pow.c) lag.add(e, p.scaled(ck));
        if (k < m) arg_pow = mul(arg_pow, arg);
    }

    OpLaurent exp_series{K, {}};
    for (long n = 0; n <= K; ++n)
        exp_series.add(n, ladder_pair(Ordering::Normal, n, n, 0, 0).scaled(inv_int(factorial(n))));

    OpLaurent prod = mul(exp_series, lag);
    OpLaurent rhs{K, {}};
    const GaussianRational mf{BigRational{factorial(m)}};
    for (const auto& [e, p] : prod.c) rhs.add(e + m, p.scaled(mf));

    for (const auto& [e, p] : rhs.c) {
        if (e < 0 && !p.is_zero())
            throw NegativePowerSurvives("tau^" + std::to_string(e) + ": " + p.str());
    }

    for (long e = 0; e <= K; ++e) {
        OperatorPoly diff = lhs.coeff(e) - rhs.coeff(e);
        if (!diff.is_zero()) {
            ExactVerdict v;
            v.pass = false;
            v.detail = "coefficient tau^" + std::to_string(e) + ": " + diff.str();
            return v;
        }
    }
    return {.pass = true, .detail = {}};
}

}  // namespace tvhp
