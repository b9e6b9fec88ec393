#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutpoint/models.hpp"
#include "cutpoint/verify.hpp"
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

}  // namespace

TEST_CASE("eval_gfa scalar powers and empty word") {
    CHECK(eval_gfa(scalar_gfa(rational(1), rational(2), rational(1), rational(0)), {0, 0}) == rational(4));
    CHECK(eval_gfa(scalar_gfa(rational(1), rational(-1), rational(1), rational(0)), {0, 0, 0}) ==
          rational(-1));

    Gfa<Rational> g;
    g.alphabet.symbols = {"a"};
    g.initial = {rational(2), rational(0)};
    g.transition = {Matrix<Rational>::identity(2)};
    g.final_weights = {rational(3), rational(5)};
    g.cutpoint = rational(0);
    CHECK(eval_gfa(g, {}) == rational(6));
}

TEST_CASE("eval_gfa rejects unknown symbols") {
    auto g = scalar_gfa(rational(1), rational(2), rational(1), rational(0));
    CHECK_THROWS_AS(eval_gfa(g, {1}), error);
}

TEST_CASE("eval_pfa basic machines") {
    Pfa<Rational> p;
    p.alphabet.symbols = {"a"};
    p.initial = {rational(1), rational(0)};
    p.transition = {Matrix<Rational>::identity(2)};
    p.end_marker = Matrix<Rational>::identity(2);
    p.accepting = {0};
    p.cutpoint = rational(1, 2);
    CHECK(eval_pfa(p, {0}) == rational(1));

    p.accepting = {};
    CHECK(eval_pfa(p, {0}) == rational(0));
    CHECK(eval_pfa(p, {0, 0, 0}) == rational(0));

    // one fair-coin step into the accepting state
    Pfa<Rational> coin = p;
    Matrix<Rational> fair(2, 2);
    fair(0, 0) = fair(0, 1) = fair(1, 0) = fair(1, 1) = rational(1, 2);
    coin.transition = {fair};
    coin.accepting = {1};
    CHECK(eval_pfa(coin, {0}) == rational(1, 2));
}

TEST_CASE("eval_pfa stays in [0,1] on random machines") {
    std::mt19937_64 rng(4101);
    for (int trial = 0; trial < 25; ++trial) {
        Pfa<Rational> p = random_rational_pfa(rng, 2 + trial % 3, 2);
        REQUIRE(validate(p).ok());
        std::uniform_int_distribution<std::size_t> len(0, 8);
        std::uniform_int_distribution<std::size_t> sym(0, 1);
        for (int w = 0; w < 20; ++w) {
            Word word(len(rng));
            for (auto& s : word) s = sym(rng);
            Rational f = eval_pfa(p, word);
            CHECK(f >= 0);
            CHECK(f <= 1);
        }
    }
}

TEST_CASE("apply_channel identity, replacement, dephasing") {
    std::mt19937_64 rng(4102);

    Channel id;
    id.dim = 2;
    id.kraus = {CMatrix::identity(2)};
    CMatrix rho = random_density(rng, 2);
    CHECK(max_abs(apply_channel(id, rho) - rho) < 1e-15);

    // replacement channel: fixed output regardless of input
    CMatrix target = random_density(rng, 2);
    EigenSystem es = hermitian_eigensystem(target);
    Channel replace;
    replace.dim = 2;
    for (std::size_t i = 0; i < 2; ++i) {
        if (es.values[i] <= 0) continue;
        for (std::size_t j = 0; j < 2; ++j) {
            CMatrix k(2, 2);
            for (std::size_t r = 0; r < 2; ++r) k(r, j) = std::sqrt(es.values[i]) * es.vectors(r, i);
            replace.kraus.push_back(k);
        }
    }
    REQUIRE(validate(replace).ok());
    CHECK(max_abs(apply_channel(replace, rho) - target) < 1e-12);
    CHECK(max_abs(apply_channel(replace, random_density(rng, 2)) - target) < 1e-12);

    // dephasing {I/sqrt2, Z/sqrt2} flattens the x eigenstate to I/2
    Channel dephase;
    dephase.dim = 2;
    const double s = 1.0 / std::sqrt(2.0);
    dephase.kraus = {scaled(s, CMatrix::identity(2)), scaled(s, pauli_z())};
    CMatrix plus = scaled(0.5, CMatrix::identity(2)) + scaled(0.5, pauli_x());
    CHECK(max_abs(apply_channel(dephase, plus) - scaled(0.5, CMatrix::identity(2))) < 1e-15);
}

TEST_CASE("apply_channel preserves trace on random input") {
    std::mt19937_64 rng(4103);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 3;
        Channel e = random_channel(rng, n, 2 + trial % 2);
        CMatrix rho = random_density(rng, n);
        CMatrix out = apply_channel(e, rho);
        CHECK(std::abs(trace(out).real() - 1.0) < 1e-10);
        CHECK(std::abs(trace(out).imag()) < 1e-10);
    }
}

TEST_CASE("eval_qfa identity machine and zero projector") {
    Gqfa q;
    q.alphabet.symbols = {"a", "b"};
    q.initial_state = CMatrix(2, 2);
    q.initial_state(0, 0) = cxd(1.0, 0.0);
    Channel id;
    id.dim = 2;
    id.kraus = {CMatrix::identity(2)};
    q.channel = {id, id};
    q.accept_projector = CMatrix(2, 2);
    q.accept_projector(0, 0) = cxd(1.0, 0.0);
    q.cutpoint = 0.5;

    CHECK(eval_qfa(q, {}) == doctest::Approx(1.0));
    CHECK(eval_qfa(q, {0, 1, 0}) == doctest::Approx(1.0));

    q.accept_projector = CMatrix(2, 2);
    CHECK(eval_qfa(q, {0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("eval_qfa is invariant under Kraus remixing") {
    // dephasing written two ways: {I,Z}/sqrt2 and {diag(1,0), diag(0,1)},
    // related by a 2x2 unitary remix of the operator list
    const double s = 1.0 / std::sqrt(2.0);
    Channel a;
    a.dim = 2;
    a.kraus = {scaled(s, CMatrix::identity(2)), scaled(s, pauli_z())};
    Channel b;
    b.dim = 2;
    b.kraus = {diag({1.0, 0.0}), diag({0.0, 1.0})};

    std::mt19937_64 rng(4104);
    Gqfa qa;
    qa.alphabet.symbols = {"a"};
    qa.initial_state = random_density(rng, 2);
    qa.channel = {a};
    qa.accept_projector = scaled(0.5, CMatrix::identity(2)) + scaled(0.5, pauli_x());
    qa.cutpoint = 0.3;
    Gqfa qb = qa;
    qb.channel = {b};

    for (std::size_t len = 0; len <= 4; ++len) {
        Word w(len, 0);
        CHECK(eval_qfa(qa, w) == doctest::Approx(eval_qfa(qb, w)).epsilon(1e-9));
    }
}

TEST_CASE("strict cutpoint decisions") {
    CHECK(decide(1.0, 0.5).outcome == Outcome::accept);
    CHECK(decide(rational(1, 2), rational(1, 2)).outcome == Outcome::reject);  // strict
    CHECK(decide(0.5 + 1e-12, 0.5).outcome == Outcome::boundary);

    auto g = scalar_gfa(rational(1), rational(1), rational(1), rational(1));
    CHECK_FALSE(accepts(g, {0}));  // f = cutpoint exactly, rational mode decides strictly

    Gfa<double> close;
    close.alphabet.symbols = {"a"};
    close.initial = {0.5 + 1e-12};
    DMatrix m(1, 1);
    m(0, 0) = 1.0;
    close.transition = {m};
    close.final_weights = {1.0};
    close.cutpoint = 0.5;
    CHECK_THROWS_AS(accepts(close, {0}), boundary_error);
}

TEST_CASE("validate reports located violations") {
    Pfa<double> p;
    p.alphabet.symbols = {"a"};
    p.initial = {1.0, 0.0};
    DMatrix bad = DMatrix::identity(2);
    bad(0, 0) = 0.9;  // row sum 0.9
    p.transition = {bad};
    p.end_marker = DMatrix::identity(2);
    p.accepting = {0};
    p.cutpoint = 0.5;
    ValidationReport rep = validate(p);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].where == "pfa transition 'a' row 0");
    CHECK(rep.violations[0].residual == doctest::Approx(0.1).epsilon(1e-9));

    // completeness within 1e-13 passes the 1e-12 gate
    Channel nearly;
    nearly.dim = 2;
    CMatrix k = CMatrix::identity(2);
    k(0, 0) = cxd(std::sqrt(1.0 - 1e-13), 0.0);
    nearly.kraus = {k};
    CMatrix fill(2, 2);
    fill(0, 0) = cxd(std::sqrt(1e-13), 0.0);
    nearly.kraus.push_back(fill);
    CHECK(validate(nearly).ok());

    // a projector with eigenvalue 1/2 fails idempotence
    Gqfa q;
    q.alphabet.symbols = {};
    q.initial_state = scaled(0.5, CMatrix::identity(2));
    q.accept_projector = scaled(0.5, CMatrix::identity(2));
    q.cutpoint = 0.5;
    ValidationReport qrep = validate(q);
    REQUIRE_FALSE(qrep.ok());
    bool found = false;
    for (const auto& v : qrep.violations)
        if (v.message == "not idempotent") found = true;
    CHECK(found);
}

TEST_CASE("PFA embeds into a quantum machine with identical values") {
    std::mt19937_64 rng(4105);
    for (int trial = 0; trial < 10; ++trial) {
        Pfa<Rational> exact = random_rational_pfa(rng, 2 + trial % 2, 2);
        Pfa<double> p = to_float_pfa(exact);
        Gqfa q = embed_pfa(p);
        REQUIRE(validate(q).ok());
        for (const Word& w : enumerate_words(2, 5)) {
            double fp = eval_pfa(p, w);
            double fq = eval_embedded_pfa(q, w);
            CHECK(std::abs(fp - fq) < 1e-12);
        }
    }
}
