#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutpoint/convert.hpp"
#include "cutpoint/verify.hpp"
#include "cutpoint/witness.hpp"
#include "support.hpp"

using namespace cutpoint;
using namespace cutpoint::testing;

namespace {

Gfa<Rational> scalar_gfa(Rational weight, Rational step, Rational final, Rational cut) {
    Gfa<Rational> g;
    g.alphabet.symbols = {"a"};
    g.initial = {weight};
    Matrix<Rational> m(1, 1);
    m(0, 0) = step;
    g.transition = {m};
    g.final_weights = {final};
    g.cutpoint = cut;
    return g;
}

// Closed-form value the conversion guarantees: 1/2 + (f - cutpoint) /
// (2 * bound * mass * (scale * dim)^len).
Rational predicted_pfa_value(const Gfa<Rational>& g, const ConversionTrace& tr, const Word& w) {
    Rational shift = eval_gfa(g, w) - g.cutpoint;
    Rational denom = 2 * tr.decision_bound * tr.initial_mass;
    Rational step = tr.scale * Rational(long(tr.padded_dim));
    for (std::size_t i = 0; i < w.size(); ++i) denom *= step;
    return Rational(1, 2) + shift / denom;
}

}  // namespace

TEST_CASE("shift_cutpoint moves the cutpoint into an extra state") {
    auto g = scalar_gfa(rational(2), rational(3), rational(1), rational(5));
    Gfa<Rational> shifted = shift_cutpoint(g);
    CHECK(shifted.states() == 2);
    CHECK(shifted.cutpoint == rational(0));
    CHECK(eval_gfa(shifted, {0}) == rational(1));  // 6 - 5

    auto flat = scalar_gfa(rational(2), rational(3), rational(1), rational(0));
    Gfa<Rational> inert = shift_cutpoint(flat);
    for (const Word& w : enumerate_words(1, 4)) CHECK(eval_gfa(inert, w) == eval_gfa(flat, w));

    CHECK(eval_gfa(shifted, {}) == eval_gfa(g, Word{}) - g.cutpoint);
}

TEST_CASE("sign_split doubles dimensions and keeps the block difference") {
    auto g = scalar_gfa(rational(1), rational(-2), rational(1), rational(0));
    SignSplit split = sign_split(g);
    REQUIRE(split.transition.size() == 1);
    const auto& a = split.transition[0];
    REQUIRE(a.rows() == 2);
    CHECK(a(0, 0) == rational(0));
    CHECK(a(0, 1) == rational(2));
    CHECK(a(1, 0) == rational(2));
    CHECK(a(1, 1) == rational(0));
    // one step from (p,q) = (1,0): block difference equals -2
    Vec<Rational> row = vec_mat({rational(1), rational(0)}, a);
    CHECK(row[0] - row[1] == rational(-2));

    Gfa<Rational> two;
    two.alphabet.symbols = {"a"};
    two.initial = {rational(1), rational(-3)};
    two.transition = {Matrix<Rational>::identity(2)};
    two.final_weights = {rational(1), rational(1)};
    two.cutpoint = rational(0);
    SignSplit parts = sign_split(two);
    CHECK(parts.initial == Vec<Rational>{rational(1), rational(0), rational(0), rational(3)});
}

TEST_CASE("sign_split preserves word values exactly on random machines") {
    std::mt19937_64 rng(6301);
    for (int trial = 0; trial < 10; ++trial) {
        Gfa<Rational> g = random_rational_gfa(rng, 2 + trial % 2, 2);
        g.cutpoint = rational(0);
        SignSplit split = sign_split(g);
        for (const Word& w : enumerate_words(2, 5)) {
            Vec<Rational> row = split.initial;
            for (std::size_t s : w) row = vec_mat(row, split.transition[s]);
            CHECK(dot(row, split.final_weights) == eval_gfa(g, w));
        }
    }
}

TEST_CASE("zero_sum_embed pads to zero row and column sums") {
    Matrix<Rational> a(2, 2);
    a(0, 1) = rational(2);
    a(1, 0) = rational(2);
    std::vector<RMatrix> b = zero_sum_embed({a});
    REQUIRE(b.size() == 1);
    const auto& m = b[0];
    REQUIRE(m.rows() == 4);
    CHECK(m(1, 0) == rational(-2));
    CHECK(m(2, 0) == rational(-2));
    CHECK(m(3, 0) == rational(4));
    CHECK(m(3, 1) == rational(-2));
    CHECK(m(3, 2) == rational(-2));
    for (std::size_t r = 0; r < 4; ++r) {
        Rational row_sum(0), col_sum(0);
        for (std::size_t c = 0; c < 4; ++c) {
            row_sum += m(r, c);
            col_sum += m(c, r);
        }
        CHECK(row_sum == rational(0));
        CHECK(col_sum == rational(0));
    }

    CHECK(zero_sum_embed({Matrix<Rational>(2, 2)})[0] == RMatrix(4, 4));
}

TEST_CASE("zero_sum_embed keeps word products in the middle block") {
    std::mt19937_64 rng(6302);
    Gfa<Rational> g = random_rational_gfa(rng, 2, 2);
    g.cutpoint = rational(0);
    SignSplit split = sign_split(g);
    std::vector<RMatrix> b = zero_sum_embed(split.transition);
    const std::size_t d = split.transition[0].rows();

    for (const Word& w : enumerate_words(2, 4)) {
        if (w.empty()) continue;
        RMatrix split_prod = RMatrix::identity(d);
        RMatrix padded_prod = RMatrix::identity(d + 2);
        for (std::size_t s : w) {
            split_prod = split_prod * split.transition[s];
            padded_prod = padded_prod * b[s];
        }
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) CHECK(padded_prod(r + 1, c + 1) == split_prod(r, c));
    }
}

TEST_CASE("choose_scale_constant uses max entry plus margin") {
    Matrix<Rational> a(1, 1);
    a(0, 0) = rational(4);
    CHECK(choose_scale_constant({a}) == rational(5));

    CHECK(choose_scale_constant({Matrix<Rational>(3, 3)}) == rational(1));

    a(0, 0) = rational(7, 2);
    CHECK(choose_scale_constant({a}) == rational(9, 2));

    a(0, 0) = rational(-4);
    CHECK(choose_scale_constant({a}) == rational(5));
    CHECK_THROWS_AS(choose_scale_constant({a}, rational(0)), error);
}

TEST_CASE("stochasticize produces positive stochastic matrices") {
    std::vector<RMatrix> zero = {RMatrix(4, 4)};
    std::vector<RMatrix> uniform = stochasticize(zero, rational(1), 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) CHECK(uniform[0](r, c) == rational(1, 4));

    // the 1-state worked example: entries (b+5)/30, exact row sums 1
    auto g = scalar_gfa(rational(1), rational(-1), rational(1), rational(0));
    GfaToPfaResult res = gfa_to_pfa(g);
    CHECK(res.trace.scale == rational(5));
    CHECK(res.trace.padded_dim == 6);
    std::vector<RMatrix> p = stochasticize(res.trace.balanced, res.trace.scale, 6);
    for (std::size_t r = 0; r < 6; ++r) {
        Rational row_sum(0);
        for (std::size_t c = 0; c < 6; ++c) {
            const Rational& x = p[0](r, c);
            CHECK(x > 0);
            CHECK(x < 1);
            Rational numer = x * 30;  // entries are (b + 5)/30
            CHECK(numer.get_den() == 1);
            row_sum += x;
        }
        CHECK(row_sum == rational(1));
    }
}

TEST_CASE("stochastic word products decompose into balanced part plus uniform part") {
    auto g = scalar_gfa(rational(1), rational(-1), rational(1), rational(0));
    GfaToPfaResult res = gfa_to_pfa(g);
    const std::size_t n = res.trace.padded_dim;
    std::vector<RMatrix> p = stochasticize(res.trace.balanced, res.trace.scale, n);

    Rational cn = res.trace.scale * Rational(long(n));
    for (std::size_t len = 1; len <= 4; ++len) {
        RMatrix pw = RMatrix::identity(n);
        RMatrix bw = RMatrix::identity(n);
        Rational scale_pow(1);
        for (std::size_t i = 0; i < len; ++i) {
            pw = pw * p[0];
            bw = bw * res.trace.balanced[0];
            scale_pow *= cn;
        }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                CHECK(pw(r, c) == bw(r, c) / scale_pow + Rational(1) / Rational(long(n)));
    }
}

TEST_CASE("end_marker_decision maps signed weights into [0,1]") {
    Vec<Rational> g = {rational(0), rational(1), rational(-1), rational(0)};
    EndMarkerDecision d = end_marker_decision(g);
    CHECK_FALSE(d.degenerate);
    CHECK(d.bound == rational(1));
    CHECK(d.accept_prob == Vec<Rational>{rational(1, 2), rational(1), rational(0), rational(1, 2)});

    Vec<Rational> halves = {rational(0), rational(1, 2), rational(-1, 2), rational(0)};
    CHECK(end_marker_decision(halves).accept_prob ==
          Vec<Rational>{rational(1, 2), rational(1), rational(0), rational(1, 2)});

    CHECK(end_marker_decision({rational(0), rational(0)}).degenerate);
}

TEST_CASE("gfa_to_pfa worked example: alternating sign machine") {
    auto g = scalar_gfa(rational(1), rational(-1), rational(1), rational(0));
    GfaToPfaResult res = gfa_to_pfa(g);
    const Pfa<Rational>& p = res.pfa;

    CHECK(p.states() == 8);  // 2k+6 with k=1
    CHECK(p.cutpoint == rational(1, 2));
    CHECK(res.trace.initial_mass == rational(1));
    CHECK(res.trace.decision_bound == rational(1));

    // both routes: direct stochastic evaluation and the closed-form identity
    CHECK(eval_pfa(p, {0}) == rational(29, 60));
    CHECK(predicted_pfa_value(g, res.trace, {0}) == rational(29, 60));
    CHECK(eval_pfa(p, {0, 0}) == rational(901, 1800));
    CHECK(predicted_pfa_value(g, res.trace, {0, 0}) == rational(901, 1800));
}

TEST_CASE("gfa_to_pfa handles degenerate inputs with a two-state machine") {
    // initial weights vanish and cutpoint is zero: value is identically 0
    Gfa<Rational> zero;
    zero.alphabet.symbols = {"a"};
    zero.initial = {rational(0)};
    zero.transition = {Matrix<Rational>::identity(1)};
    zero.final_weights = {rational(1)};
    zero.cutpoint = rational(0);
    GfaToPfaResult res = gfa_to_pfa(zero);
    CHECK(res.trace.degenerate);
    CHECK(res.pfa.states() == 2);
    REQUIRE(validate(res.pfa).ok());
    for (const Word& w : enumerate_words(1, 4)) {
        CHECK(eval_pfa(res.pfa, w) == rational(0));
        CHECK_FALSE(accepts(res.pfa, w));
    }
}

TEST_CASE("conversion trace invariants") {
    std::mt19937_64 rng(6306);
    for (int trial = 0; trial < 6; ++trial) {
        Gfa<Rational> g = random_rational_gfa(rng, 1 + trial % 4, 2);
        GfaToPfaResult res = gfa_to_pfa(g);
        if (res.trace.degenerate) continue;
        const ConversionTrace& tr = res.trace;

        for (const RMatrix& b : tr.balanced) {
            for (std::size_t r = 0; r < b.rows(); ++r) {
                Rational row_sum(0), col_sum(0);
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    row_sum += b(r, c);
                    col_sum += b(c, r);
                    CHECK(rational_abs(b(r, c)) < tr.scale);
                }
                CHECK(row_sum == rational(0));
                CHECK(col_sum == rational(0));
            }
        }

        Rational mass(0);
        for (const Rational& gi : tr.decision) mass += gi;
        CHECK(mass == rational(0));

        for (const Rational& h : tr.accept_prob) {
            CHECK(h >= 0);
            CHECK(h <= 1);
        }
    }
}

TEST_CASE("gfa_to_pfa state count and alphabet preservation") {
    std::mt19937_64 rng(6303);
    for (std::size_t k = 1; k <= 6; ++k) {
        Gfa<Rational> g = random_rational_gfa(rng, k, 1 + k % 3);
        GfaToPfaResult res = gfa_to_pfa(g);
        if (res.trace.degenerate) continue;  // essentially impossible for random inputs
        CHECK(res.pfa.states() == 2 * k + 6);
        CHECK(res.pfa.alphabet == g.alphabet);
        REQUIRE(validate(res.pfa).ok());
    }
}

TEST_CASE("gfa_to_pfa preserves strict-cutpoint decisions exactly") {
    std::mt19937_64 rng(6304);
    int checked_words = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t k = 1 + trial % 4;
        std::size_t nsym = 1 + trial % 3;
        Gfa<Rational> g = random_rational_gfa(rng, k, nsym);
        GfaToPfaResult res = gfa_to_pfa(g);

        for (const Word& w : enumerate_words(nsym, 4)) {
            Rational fg = eval_gfa(g, w);
            Rational fp = eval_pfa(res.pfa, w);
            CHECK((fp > rational(1, 2)) == (fg > g.cutpoint));
            if (!res.trace.degenerate) CHECK(fp == predicted_pfa_value(g, res.trace, w));
            ++checked_words;
        }
    }
    CHECK(checked_words > 100);
}

TEST_CASE("gfa_to_pfa respects a custom scale margin") {
    auto g = scalar_gfa(rational(1), rational(-1), rational(1), rational(0));
    GfaToPfaResult res = gfa_to_pfa(g, rational(1, 2));
    CHECK(res.trace.scale == rational(9, 2));
    REQUIRE(validate(res.pfa).ok());
    for (const Word& w : enumerate_words(1, 4))
        CHECK((eval_pfa(res.pfa, w) > rational(1, 2)) == (eval_gfa(g, w) > g.cutpoint));
}

TEST_CASE("promote_exact interprets floats as dyadic rationals") {
    Gfa<double> g;
    g.alphabet.symbols = {"a"};
    g.initial = {0.5};
    DMatrix m(1, 1);
    m(0, 0) = 0.1;
    g.transition = {m};
    g.final_weights = {1.0};
    g.cutpoint = 0.25;
    Gfa<Rational> exact = promote_exact(g);
    CHECK(exact.initial[0] == rational(1, 2));
    CHECK(exact.cutpoint == rational(1, 4));
    // 0.1 is not exactly representable; the dyadic value is kept verbatim
    CHECK(exact.transition[0](0, 0) == rational_from_double(0.1));
    CHECK(exact.transition[0](0, 0) != rational(1, 10));
}

TEST_CASE("qfa_to_pfa state counts follow 2n^2+6") {
    std::mt19937_64 rng(6305);
    Gqfa q2 = random_gqfa(rng, 2, 2);
    GfaToPfaResult r2 = qfa_to_pfa(q2);
    CHECK(r2.pfa.states() == 14);

    Gqfa q3 = random_gqfa(rng, 3, 2);
    GfaToPfaResult r3 = qfa_to_pfa(q3);
    CHECK(r3.pfa.states() == 24);
}

TEST_CASE("qfa_to_pfa reproduces the witness decisions end to end") {
    WitnessParams params = witness_params(2);
    std::vector<SignVector> tests;
    for (std::uint64_t mask : all_subset_masks(3)) tests.push_back(subset_signs(mask, 3));
    Gqfa q = build_witness(params, tests);

    GfaToPfaResult res = qfa_to_pfa(q);
    CHECK(res.pfa.states() == 14);

    for (std::size_t k = 1; k <= 3; ++k)
        for (const SignVector& s : tests) {
            Word w = {*q.alphabet.index(prepare_symbol_name(k)), *q.alphabet.index(test_symbol_name(s))};
            bool quantum = eval_qfa(q, w) > 0.5;
            bool classical = eval_pfa(res.pfa, w) > rational(1, 2);
            CHECK(quantum == classical);
        }
}
