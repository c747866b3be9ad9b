#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvhp/boson_algebra.hpp"
#include "tvhp/fock_numeric.hpp"
#include "tvhp/hermite_core.hpp"

#include <random>

using namespace tvhp;

namespace {

OperatorWord word_of(std::initializer_list<Letter> ls) {
    OperatorWord w;
    w.letters = ls;
    return w;
}

GaussianRational coeff_of(const OperatorPoly& p, BosonMonomial m) {
    auto it = p.terms().find(m);
    return it == p.terms().end() ? GaussianRational{} : it->second;
}

std::vector<Letter> random_word(std::mt19937& rng, int len) {
    std::vector<Letter> ls;
    for (int k = 0; k < len; ++k)
        ls.push_back(static_cast<Letter>(rng() % 4));
    return ls;
}

}  // namespace

TEST_CASE("normal ordering of elementary words") {
    OperatorPoly p = normal_order(word_of({Letter::A, Letter::ADag}));
    CHECK(p.terms().size() == 2);
    CHECK(coeff_of(p, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(p, {}) == GaussianRational{1});

    OperatorPoly q = normal_order(word_of({Letter::ADag, Letter::A}));
    CHECK(q.terms().size() == 1);
    CHECK(coeff_of(q, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{1});

    // a^2 a+^2 = a+^2 a^2 + 4 a+a + 2
    OperatorPoly r = normal_order(word_of({Letter::A, Letter::A, Letter::ADag, Letter::ADag}));
    CHECK(coeff_of(r, {.adag = 2, .bdag = 0, .a = 2, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(r, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{4});
    CHECK(coeff_of(r, {}) == GaussianRational{2});
}

TEST_CASE("antinormal ordering of elementary words") {
    OperatorPoly p = antinormal_order(word_of({Letter::ADag, Letter::A}));
    CHECK(coeff_of(p, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(p, {}) == GaussianRational{-1});

    OperatorPoly single = antinormal_order(word_of({Letter::A}));
    CHECK(single.terms().size() == 1);

    // a+^2 a^2 = a^2 a+^2 - 4 a a+ + 2
    OperatorPoly r =
        antinormal_order(word_of({Letter::ADag, Letter::ADag, Letter::A, Letter::A}));
    CHECK(coeff_of(r, {.adag = 2, .bdag = 0, .a = 2, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(r, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{-4});
    CHECK(coeff_of(r, {}) == GaussianRational{2});
}

TEST_CASE("vacuum expectation cross-checks on a Fock matrix") {
    TwoModeState vac(10);
    vac.at(0, 0) = 1.0;
    // <0|a^2 a+^2|0> = 2
    OperatorPoly p = normal_order(word_of({Letter::A, Letter::A, Letter::ADag, Letter::ADag}));
    TwoModeState out = apply_operator_poly(p, vac);
    CHECK(out.at(0, 0).real() == doctest::Approx(2.0));
    // <0|a+^2 a^2|0> = 0
    OperatorPoly q =
        antinormal_order(word_of({Letter::ADag, Letter::ADag, Letter::A, Letter::A}));
    TwoModeState out2 = apply_operator_poly(q, vac);
    CHECK(std::abs(out2.at(0, 0)) < 1e-14);
}

TEST_CASE("ordering round trip on random words") {
    std::mt19937 rng(13);
    for (int iter = 0; iter < 40; ++iter) {
        OperatorWord w;
        w.letters = random_word(rng, 1 + static_cast<int>(rng() % 8));
        OperatorPoly nf = normal_order(w);
        OperatorPoly anf = antinormal_order(w);
        CHECK(nf.to_ordering(Ordering::Antinormal) == anf);
        CHECK(anf.to_ordering(Ordering::Normal) == nf);
    }
}

TEST_CASE("grading: ordering preserves per-mode excess") {
    std::mt19937 rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        OperatorWord w;
        w.letters = random_word(rng, 6);
        long ea = 0, eb = 0;
        for (Letter l : w.letters) {
            if (l == Letter::ADag) ++ea;
            if (l == Letter::A) --ea;
            if (l == Letter::BDag) ++eb;
            if (l == Letter::B) --eb;
        }
        const OperatorPoly nf = normal_order(w);
        for (const auto& [m, c] : nf.terms()) {
            CHECK(m.adag - m.a == ea);
            CHECK(m.bdag - m.b == eb);
        }
    }
}

TEST_CASE("linearity of normal ordering") {
    OperatorWord w1 = word_of({Letter::A, Letter::ADag, Letter::B});
    OperatorWord w2 = word_of({Letter::BDag, Letter::A});
    GaussianRational alpha{BigRational{2, 3}, BigRational{1, 5}};
    GaussianRational beta{BigRational{-1, 2}};

    OperatorWord w1s = w1, w2s = w2;
    w1s.coefficient = alpha;
    w2s.coefficient = beta;
    OperatorPoly combined = normal_order(w1s) + normal_order(w2s);
    OperatorPoly expect = normal_order(w1).scaled(alpha) + normal_order(w2).scaled(beta);
    CHECK(combined == expect);
}

TEST_CASE("mul_operator agrees with letter-by-letter rewriting") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 30; ++iter) {
        OperatorWord w1, w2;
        w1.letters = random_word(rng, 1 + static_cast<int>(rng() % 4));
        w2.letters = random_word(rng, 1 + static_cast<int>(rng() % 4));
        OperatorWord joined;
        joined.letters = w1.letters;
        joined.letters.insert(joined.letters.end(), w2.letters.begin(), w2.letters.end());
        CHECK(mul_operator(normal_order(w1), normal_order(w2)) == normal_order(joined));
        CHECK(mul_operator(antinormal_order(w1), antinormal_order(w2)) ==
              antinormal_order(joined));
    }
}

TEST_CASE("substitute_and_expand basics") {
    OperatorPoly u(Ordering::Normal), v(Ordering::Normal);
    u.add_term({.adag = 0, .bdag = 0, .a = 1, .b = 0}, 1);
    u.add_term({.adag = 0, .bdag = 1, .a = 0, .b = 0}, 1);
    v.add_term({.adag = 1, .bdag = 0, .a = 0, .b = 0}, 1);
    v.add_term({.adag = 0, .bdag = 0, .a = 0, .b = 1}, 1);

    OperatorPoly id = substitute_and_expand(hermite_coeffs(0, 0), u, v);
    CHECK(id == OperatorPoly::identity(Ordering::Normal));

    // H_{1,1}(a+b+, a++b) = a+a + ab + a+b+ + b+b (the commutator constant cancels)
    OperatorPoly h11 = substitute_and_expand(hermite_coeffs(1, 1), u, v);
    CHECK(h11.terms().size() == 4);
    CHECK(coeff_of(h11, {.adag = 1, .bdag = 0, .a = 1, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(h11, {.adag = 0, .bdag = 0, .a = 1, .b = 1}) == GaussianRational{1});
    CHECK(coeff_of(h11, {.adag = 1, .bdag = 1, .a = 0, .b = 0}) == GaussianRational{1});
    CHECK(coeff_of(h11, {.adag = 0, .bdag = 1, .a = 0, .b = 1}) == GaussianRational{1});

    // Non-commuting arguments are rejected.
    OperatorPoly a_only(Ordering::Normal), adag_only(Ordering::Normal);
    a_only.add_term({.adag = 0, .bdag = 0, .a = 1, .b = 0}, 1);
    adag_only.add_term({.adag = 1, .bdag = 0, .a = 0, .b = 0}, 1);
    CHECK_THROWS_AS(substitute_and_expand(hermite_coeffs(1, 1), a_only, adag_only),
                    NonCommutingArguments);
}

TEST_CASE("operator identity: normal-ordered TVHP substitution") {
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n) CHECK(check_identity_normal(m, n).pass);
}

TEST_CASE("operator identity: scaled antinormal form") {
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n) CHECK(check_identity_antinormal_scaled(m, n).pass);
}

TEST_CASE("operator identity: reciprocal form") {
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n) CHECK(check_identity_reciprocal(m, n).pass);
}

TEST_CASE("operator identity: single mode a^n a+^m") {
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n) CHECK(check_identity_single_mode(m, n).pass);
}

TEST_CASE("operator identity: antinormal single mode") {
    for (long m = 0; m <= 6; ++m)
        for (long n = 0; n <= 6; ++n) CHECK(check_identity_antinormal_single(m, n).pass);
}

TEST_CASE("exponential factorizations, formal series to degree 8") {
    CHECK(check_factorization_normal(8).pass);
    CHECK(check_factorization_antinormal(8).pass);
}

TEST_CASE("laguerre operator identity with tau Laurent bookkeeping") {
    for (long m = 0; m <= 3; ++m) CHECK(check_identity_laguerre_operator(m, 8).pass);
}

TEST_CASE("word grammar") {
    OperatorWord w = OperatorWord::parse("a+^2 b a");
    CHECK(w.letters == std::vector<Letter>{Letter::ADag, Letter::ADag, Letter::B, Letter::A});
    CHECK(w.coefficient == GaussianRational{1});

    OperatorWord w2 = OperatorWord::parse("(1/2+3/4 i) a b+");
    CHECK(w2.coefficient == GaussianRational{BigRational{1, 2}, BigRational{3, 4}});
    CHECK(w2.letters == std::vector<Letter>{Letter::A, Letter::BDag});

    CHECK_THROWS(OperatorWord::parse("c"));
    CHECK_THROWS(OperatorWord::parse("a^"));
}

TEST_CASE("matrix faithfulness: symbolic zero means numeric zero and vice versa") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const long N = 10;

    // A random nonzero OperatorPoly acts nonzero on a generic state.
    OperatorPoly p(Ordering::Normal);
    p.add_term({.adag = 1, .bdag = 0, .a = 1, .b = 0}, GaussianRational{BigRational{3, 7}});
    p.add_term({.adag = 0, .bdag = 2, .a = 0, .b = 1}, GaussianRational{-1});
    TwoModeState st(N);
    for (long na = 0; na <= N; ++na)
        for (long nb = 0; nb <= N; ++nb) st.at(na, nb) = Complex{dist(rng), dist(rng)};
    CHECK(apply_operator_poly(p, st).norm() > 1e-6);

    // A symbolically zero difference acts as zero on the guarded block.
    OperatorWord w;
    w.letters = random_word(rng, 4);
    OperatorPoly diff = normal_order(w) - antinormal_order(w).to_ordering(Ordering::Normal);
    CHECK(diff.is_zero());
}
