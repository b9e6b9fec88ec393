#pragma once

#include <cstdint>
#include <optional>

#include "cutpoint/models.hpp"

namespace cutpoint {

// Sign vector over the traceless directions; entries are +1 or -1.
using SignVector = std::vector<int>;

// Fixed parameters of the prepare-test witness family on C^n. The prepared
// states are I/n + epsilon H_k over the traceless basis; test observables
// are 1/2 I + strength * sum_j s_j H_j.
struct WitnessParams {
    std::size_t dim = 0;         // n
    std::size_t directions = 0;  // n^2 - 1
    HermitianBasis basis;        // traceless
    double epsilon = 0.0;        // perturbation radius keeping states positive
    double strength = 0.0;       // observable coefficient, strength * norm_bound < 1/2
    double norm_bound = 0.0;     // upper bound on max_s ||sum_j s_j H_j||_op
    bool exact_bound = false;    // norm_bound from exhaustive sign enumeration
};

// epsilon rule: 1 / (2 n max_k ||H_k||_op); every prepared state then has
// smallest eigenvalue at least 1/(2n).
double choose_epsilon(const HermitianBasis& traceless_basis);

// Triangle-inequality bound sum_j ||H_j||_op; dominates every signed
// combination and keeps construction polynomial in the dimension.
double triangle_norm_bound(const HermitianBasis& traceless_basis);

// Exhaustive max over all sign vectors; exponential, guarded to <= 12
// directions. Cross-check for the triangle bound.
double exact_sign_norm_bound(const HermitianBasis& traceless_basis);

// strength rule: 1 / (4 * norm_bound), so strength * norm_bound = 1/4.
WitnessParams witness_params(std::size_t n, bool exact_bound = false);

// I/n + epsilon H_k; k is 1-based to match the symbol names p1..pd.
CMatrix prepared_state(const WitnessParams& params, std::size_t k);

// Replacement channel erasing the input onto prepared_state(k).
Channel prepare_channel(const WitnessParams& params, std::size_t k);

struct TestSymbol {
    SignVector signs;
    CMatrix observable;  // sum_j s_j H_j
    CMatrix effect;      // 1/2 I + strength * observable, a positive contraction
    Channel channel;     // realizes Tr(effect rho) against the fixed projector
};

// Builds the measurement channel for one sign vector: spectral decomposition
// of the effect feeds Kraus operators landing in |0> (accept) and |1>
// (reject).
TestSymbol test_channel(const WitnessParams& params, const SignVector& signs);

std::string prepare_symbol_name(std::size_t k);       // "p1", "p2", ...
std::string test_symbol_name(const SignVector& s);    // "tau:+--"
std::optional<SignVector> parse_test_symbol(std::string_view name);
std::optional<std::size_t> parse_prepare_symbol(std::string_view name);

// The witness machine: initial state I/n, accept projector |0><0|, cutpoint
// 1/2, prepare symbols p1..pd plus the given test symbols. Test symbols are
// materialized only as requested; the full family is exponentially large.
Gqfa build_witness(const WitnessParams& params, const std::vector<SignVector>& tests = {});
Gqfa build_witness(std::size_t n);

// Acceptance probability of the two-letter word p_k tau_s, by full density
// simulation of the machine. The machine must contain both symbols.
double witness_acceptance(const Gqfa& witness, std::size_t k, const SignVector& signs);

// sign vector of a subset: +1 on members, -1 elsewhere
SignVector subset_signs(std::uint64_t subset_mask, std::size_t directions);

struct ShatterCheck {
    std::size_t prepare_index = 0;  // 1-based
    std::uint64_t subset_mask = 0;
    double value = 0.0;
    bool expected_accept = false;
    Outcome outcome = Outcome::reject;
};

struct ShatterReport {
    std::size_t checks = 0;
    std::vector<ShatterCheck> failures;  // wrong decisions and boundary hits
    double min_margin = 0.0;             // smallest |value - 1/2| over all checks

    bool ok() const { return failures.empty(); }
};

// For each subset, tests that the machine accepts exactly the prepared
// states indexed by the subset. Builds the needed test symbols internally.
ShatterReport verify_shattering(const WitnessParams& params, const std::vector<std::uint64_t>& subset_masks);

std::vector<std::uint64_t> all_subset_masks(std::size_t directions);  // guarded to <= 20

}  // namespace cutpoint
