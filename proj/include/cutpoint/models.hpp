#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cutpoint/linalg.hpp"
#include "cutpoint/matrix.hpp"
#include "cutpoint/rational.hpp"

namespace cutpoint {

inline constexpr double k_boundary_tol = 1e-9;
inline constexpr double k_cptp_tol = 1e-12;

// Generalized finite automaton: f(w) = initial . T_{w_1} ... T_{w_m} . final.
// Vectors and matrices may be exact rational or float64.
template <typename T>
struct Gfa {
    Alphabet alphabet;
    Vec<T> initial;                      // row vector, one weight per state
    std::vector<Matrix<T>> transition;   // indexed like alphabet.symbols
    Vec<T> final_weights;                // column vector
    T cutpoint{};

    std::size_t states() const { return initial.size(); }
};

// End-marker probabilistic automaton: f(w) = initial . P_w . end_marker . 1_F.
template <typename T>
struct Pfa {
    Alphabet alphabet;
    Vec<T> initial;                      // probability distribution
    std::vector<Matrix<T>> transition;   // row-stochastic, indexed like alphabet
    Matrix<T> end_marker;                // row-stochastic
    std::vector<std::size_t> accepting;  // sorted state indices
    T cutpoint{};

    std::size_t states() const { return initial.size(); }

    // end_marker applied to the accepting indicator; f(w) = (initial . P_w) . this
    Vec<T> accept_column() const {
        Vec<T> ind(states());
        for (std::size_t s : accepting) ind[s] = T(1);
        return mat_vec(end_marker, ind);
    }
};

// CPTP map in Kraus form. The second operator list is bookkeeping only (e.g.
// operators landing in a reject subspace); trace preservation is checked over
// the union of both lists.
struct Channel {
    std::size_t dim = 0;
    std::vector<CMatrix> kraus;
    std::vector<CMatrix> kraus_extra;

    // sum K^dagger K over both lists
    CMatrix completeness() const;
};

// Measure-once mixed-state quantum automaton: f(w) = Tr(accept_projector rho_w).
struct Gqfa {
    Alphabet alphabet;
    CMatrix initial_state;            // density operator
    std::vector<Channel> channel;     // indexed like alphabet
    CMatrix accept_projector;
    double cutpoint = 0.0;

    std::size_t dim() const { return initial_state.rows(); }
};

namespace detail {
inline void check_word(const Word& w, std::size_t alphabet_size) {
    for (std::size_t s : w)
        if (s >= alphabet_size) throw error("unknown symbol index " + std::to_string(s));
}
}  // namespace detail

template <typename T>
T eval_gfa(const Gfa<T>& g, const Word& w) {
    detail::check_word(w, g.alphabet.size());
    Vec<T> row = g.initial;
    for (std::size_t s : w) row = vec_mat(row, g.transition[s]);
    return dot(row, g.final_weights);
}

template <typename T>
T eval_pfa(const Pfa<T>& p, const Word& w) {
    detail::check_word(w, p.alphabet.size());
    Vec<T> row = p.initial;
    for (std::size_t s : w) row = vec_mat(row, p.transition[s]);
    return dot(row, p.accept_column());
}

// Linear extension of the Kraus action to arbitrary square operators; on
// density matrices this is the channel itself.
CMatrix apply_channel(const Channel& e, const CMatrix& x);

double eval_qfa(const Gqfa& q, const Word& w);

enum class Outcome { reject, accept, boundary };

struct Decision {
    Outcome outcome = Outcome::reject;
    double value = 0.0;     // f(w), float approximation for exact machines
    double cutpoint = 0.0;  // float approximation
    double margin = 0.0;    // |f(w) - cutpoint|
};

// Strict cutpoint semantics. Float values inside the boundary band are
// reported as Outcome::boundary, never silently decided.
Decision decide(double value, double cutpoint, double boundary_tol = k_boundary_tol);
Decision decide(const Rational& value, const Rational& cutpoint);

template <typename T>
Decision decide_word(const Gfa<T>& g, const Word& w, double boundary_tol = k_boundary_tol) {
    if constexpr (std::is_same_v<T, Rational>) {
        (void)boundary_tol;
        return decide(eval_gfa(g, w), g.cutpoint);
    } else {
        return decide(eval_gfa(g, w), g.cutpoint, boundary_tol);
    }
}

template <typename T>
Decision decide_word(const Pfa<T>& p, const Word& w, double boundary_tol = k_boundary_tol) {
    if constexpr (std::is_same_v<T, Rational>) {
        (void)boundary_tol;
        return decide(eval_pfa(p, w), p.cutpoint);
    } else {
        return decide(eval_pfa(p, w), p.cutpoint, boundary_tol);
    }
}

inline Decision decide_word(const Gqfa& q, const Word& w, double boundary_tol = k_boundary_tol) {
    return decide(eval_qfa(q, w), q.cutpoint, boundary_tol);
}

// Throwing form: true iff f(w) > cutpoint; boundary_error when the strict
// comparison is not float-decidable.
template <typename M>
bool accepts(const M& machine, const Word& w, double boundary_tol = k_boundary_tol) {
    Decision d = decide_word(machine, w, boundary_tol);
    if (d.outcome == Outcome::boundary) throw boundary_error(d.value, d.cutpoint, boundary_tol);
    return d.outcome == Outcome::accept;
}

struct Violation {
    std::string where;
    double residual = 0.0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

template <typename T>
ValidationReport validate(const Gfa<T>& g);
template <typename T>
ValidationReport validate(const Pfa<T>& p);
ValidationReport validate(const Channel& e, const std::string& where = "channel");
ValidationReport validate(const Gqfa& q);

// Any machine the toolkit handles, tagged by scalar mode.
using Machine = std::variant<Gfa<Rational>, Gfa<double>, Pfa<Rational>, Pfa<double>, Gqfa>;

const Alphabet& machine_alphabet(const Machine& m);
Decision machine_decide(const Machine& m, const Word& w, double boundary_tol = k_boundary_tol);
double machine_value(const Machine& m, const Word& w);
// exact value, for machines in rational mode
std::optional<Rational> machine_value_exact(const Machine& m, const Word& w);
ValidationReport validate(const Machine& m);
std::string machine_kind(const Machine& m);

// Classical-into-quantum embedding: distributions become diagonal densities
// and stochastic steps become Kraus channels. The end-marker matrix becomes
// one more channel bound to an explicit "#" symbol appended to the alphabet,
// applied as the last step before measurement; evaluate on w + "#" to match
// the PFA on w.
Gqfa embed_pfa(const Pfa<double>& p);

// Acceptance probability of the embedded machine on w + "#".
double eval_embedded_pfa(const Gqfa& embedded, const Word& w);

}  // namespace cutpoint
