#pragma once

#include "cutpoint/models.hpp"

namespace cutpoint {

using RMatrix = Matrix<Rational>;

// Every intermediate of the GFA-to-PFA pipeline, kept for audit and exact
// testing. All arithmetic is exact rational.
struct ConversionTrace {
    Gfa<Rational> shifted;                   // k+1 states, cutpoint moved to 0
    Vec<Rational> split_initial;             // nonnegative, length 2(k+1)
    std::vector<RMatrix> split_transition;   // nonnegative blocks per symbol
    Vec<Rational> split_final;               // signed, opposite halves
    std::vector<RMatrix> balanced;           // zero row/column sums, padded by 2
    Rational scale;                          // strict bound on |balanced| entries
    std::size_t padded_dim = 0;              // 2k+4
    Rational initial_mass;                   // l1 norm of split_initial
    Vec<Rational> decision;                  // signed end-marker weights, length padded_dim
    Rational decision_bound;                 // max |decision_i|
    Vec<Rational> accept_prob;               // end-marker acceptance probabilities in [0,1]
    bool degenerate = false;
    std::string degenerate_reason;
};

// Absorb the cutpoint into one extra inert state; the shifted automaton
// computes f(w) - cutpoint with cutpoint 0.
Gfa<Rational> shift_cutpoint(const Gfa<Rational>& g);

struct SignSplit {
    Vec<Rational> initial;                  // (positive part, negative part)
    std::vector<RMatrix> transition;        // [[P, N], [N, P]] blocks
    Vec<Rational> final_weights;            // (final, -final)
};

// Doubles the dimension so that all initial weights and transition entries
// are nonnegative while the block difference reproduces the signed system.
// Requires cutpoint 0.
SignSplit sign_split(const Gfa<Rational>& zero_cutpoint);

// Pads each nonnegative matrix with one leading and one trailing state so
// that every row and column sums to zero; word products keep the original
// matrix as their middle block.
std::vector<RMatrix> zero_sum_embed(const std::vector<RMatrix>& split_transition);

// Smallest scale of the form (max entry) + margin that strictly dominates
// every entry magnitude. margin defaults to 1 and must be positive.
Rational choose_scale_constant(const std::vector<RMatrix>& balanced, const Rational& margin = Rational(1));

// (B + scale*J) / (scale*N): row-stochastic with strictly positive entries.
std::vector<RMatrix> stochasticize(const std::vector<RMatrix>& balanced, const Rational& scale,
                                   std::size_t padded_dim);

struct EndMarkerDecision {
    Vec<Rational> accept_prob;  // 1/2 + decision / (2 * bound), in [0,1]
    Rational bound;             // max |decision_i|
    bool degenerate = false;    // bound was zero: empty language
};

EndMarkerDecision end_marker_decision(const Vec<Rational>& decision);

// Two-state machine recognizing the empty language at cutpoint 1/2.
Pfa<Rational> degenerate_pfa(const Alphabet& alphabet);

struct GfaToPfaResult {
    Pfa<Rational> pfa;
    ConversionTrace trace;
};

// Alphabet-preserving conversion of a k-state generalized automaton into a
// (2k+6)-state probabilistic automaton with cutpoint 1/2 and the same
// strict-cutpoint language. Degenerate inputs (identically-cutpoint word
// functions) produce the two-state machine instead.
GfaToPfaResult gfa_to_pfa(const Gfa<Rational>& g, const Rational& scale_margin = Rational(1));

// Exact dyadic promotion of a float automaton; every double is interpreted
// as the rational it denotes.
Gfa<Rational> promote_exact(const Gfa<double>& g);

// Composition: linearize, promote, convert. Non-degenerate outputs have
// exactly 2n^2+6 states.
GfaToPfaResult qfa_to_pfa(const Gqfa& q, const Rational& scale_margin = Rational(1));

}  // namespace cutpoint
