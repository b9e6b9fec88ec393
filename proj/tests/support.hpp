#pragma once

// Shared fixtures and random-instance generators for the test suites.
// Everything is seeded explicitly so failures reproduce.

#include <random>

#include "cutpoint/convert.hpp"
#include "cutpoint/models.hpp"

namespace cutpoint::testing {

inline CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = cxd(1, 0);
    m(1, 0) = cxd(1, 0);
    return m;
}

inline CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cxd(0, -1);
    m(1, 0) = cxd(0, 1);
    return m;
}

inline CMatrix pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = cxd(1, 0);
    m(1, 1) = cxd(-1, 0);
    return m;
}

inline CMatrix scaled(double s, const CMatrix& m) { return cxd(s, 0.0) * m; }

inline CMatrix diag(std::initializer_list<double> entries) {
    CMatrix m(entries.size(), entries.size());
    std::size_t i = 0;
    for (double e : entries) {
        m(i, i) = cxd(e, 0.0);
        ++i;
    }
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = cxd(gauss(rng), 0.0);
        for (std::size_t c = r + 1; c < n; ++c) {
            cxd x(gauss(rng), gauss(rng));
            m(r, c) = x;
            m(c, r) = std::conj(x);
        }
    }
    return m;
}

// Ginibre construction: G G^dagger normalized to unit trace.
inline CMatrix random_density(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g(r, c) = cxd(gauss(rng), gauss(rng));
    CMatrix rho = g * adjoint(g);
    cxd tr = trace(rho);
    return cxd(1.0 / tr.real(), 0.0) * rho;
}

// Random CPTP channel with `ops` Kraus operators: Gram-Schmidt on the
// columns of a stacked Gaussian matrix yields an isometry, whose n-row
// blocks are the operators.
inline Channel random_channel(std::mt19937_64& rng, std::size_t n, std::size_t ops = 2) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t rows = n * ops;
    CMatrix stacked(rows, n);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < n; ++c) stacked(r, c) = cxd(gauss(rng), gauss(rng));

    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cxd overlap(0, 0);
            for (std::size_t r = 0; r < rows; ++r) overlap += std::conj(stacked(r, prev)) * stacked(r, c);
            for (std::size_t r = 0; r < rows; ++r) stacked(r, c) -= overlap * stacked(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < rows; ++r) norm += std::norm(stacked(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < rows; ++r) stacked(r, c) /= norm;
    }

    Channel e;
    e.dim = n;
    for (std::size_t b = 0; b < ops; ++b) {
        CMatrix k(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) k(r, c) = stacked(b * n + r, c);
        e.kraus.push_back(k);
    }
    return e;
}

inline Gqfa random_gqfa(std::mt19937_64& rng, std::size_t n, std::size_t nsym) {
    Gqfa q;
    for (std::size_t s = 0; s < nsym; ++s) {
        q.alphabet.symbols.push_back(std::string(1, char('a' + s)));
        q.channel.push_back(random_channel(rng, n));
    }
    q.initial_state = random_density(rng, n);
    // projector onto the first half of a random orthonormal frame
    Channel frame = random_channel(rng, n, 1);  // single unitary Kraus operator
    const CMatrix& u = frame.kraus[0];
    std::size_t rank = 1 + (n > 2 ? 1 : 0);
    CMatrix p(n, n);
    for (std::size_t k = 0; k < rank; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) p(r, c) += u(r, k) * std::conj(u(c, k));
    q.accept_projector = p;
    std::uniform_real_distribution<double> cut(0.1, 0.9);
    q.cutpoint = cut(rng);
    return q;
}

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 4) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
    return rational(num_dist(rng), den);
}

// Entries in [-3,3], cutpoint in [-2,2]; the conversion-corpus shape.
inline Gfa<Rational> random_rational_gfa(std::mt19937_64& rng, std::size_t states, std::size_t nsym) {
    Gfa<Rational> g;
    for (std::size_t s = 0; s < nsym; ++s) g.alphabet.symbols.push_back(std::string(1, char('a' + s)));
    for (std::size_t i = 0; i < states; ++i) g.initial.push_back(random_rational(rng, -3, 3));
    for (std::size_t i = 0; i < states; ++i) g.final_weights.push_back(random_rational(rng, -3, 3));
    for (std::size_t s = 0; s < nsym; ++s) {
        Matrix<Rational> m(states, states);
        for (std::size_t r = 0; r < states; ++r)
            for (std::size_t c = 0; c < states; ++c) m(r, c) = random_rational(rng, -3, 3);
        g.transition.push_back(m);
    }
    g.cutpoint = random_rational(rng, -2, 2);
    return g;
}

inline Pfa<Rational> random_rational_pfa(std::mt19937_64& rng, std::size_t states, std::size_t nsym) {
    Pfa<Rational> p;
    for (std::size_t s = 0; s < nsym; ++s) p.alphabet.symbols.push_back(std::string(1, char('a' + s)));

    auto random_distribution = [&](std::size_t len) {
        std::uniform_int_distribution<long> mass(0, 6);
        Vec<Rational> row(len);
        Rational total(0);
        for (auto& x : row) {
            x = Rational(mass(rng));
            total += x;
        }
        if (total == 0) {
            row[0] = Rational(1);
            total = Rational(1);
        }
        for (auto& x : row) x /= total;
        return row;
    };

    p.initial = random_distribution(states);
    for (std::size_t s = 0; s < nsym; ++s) {
        Matrix<Rational> m(states, states);
        for (std::size_t r = 0; r < states; ++r) {
            Vec<Rational> row = random_distribution(states);
            for (std::size_t c = 0; c < states; ++c) m(r, c) = row[c];
        }
        p.transition.push_back(m);
    }
    Matrix<Rational> end(states, states);
    for (std::size_t r = 0; r < states; ++r) {
        Vec<Rational> row = random_distribution(states);
        for (std::size_t c = 0; c < states; ++c) end(r, c) = row[c];
    }
    p.end_marker = end;
    for (std::size_t i = 0; i < states; ++i)
        if (rng() % 2) p.accepting.push_back(i);
    p.cutpoint = Rational(1, 2);
    return p;
}

inline Pfa<double> to_float_pfa(const Pfa<Rational>& p) {
    Pfa<double> out;
    out.alphabet = p.alphabet;
    out.cutpoint = to_double(p.cutpoint);
    for (const auto& x : p.initial) out.initial.push_back(to_double(x));
    for (const auto& m : p.transition) {
        DMatrix d(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) d(r, c) = to_double(m(r, c));
        out.transition.push_back(d);
    }
    DMatrix d(p.end_marker.rows(), p.end_marker.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c) d(r, c) = to_double(p.end_marker(r, c));
    out.end_marker = d;
    out.accepting = p.accepting;
    return out;
}

}  // namespace cutpoint::testing
