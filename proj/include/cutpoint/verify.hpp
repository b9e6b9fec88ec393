#pragma once

#include <cstdint>

#include "cutpoint/models.hpp"
#include "cutpoint/simplex.hpp"

namespace cutpoint {

// All words of length 0..max_len in canonical order: by length, then
// lexicographically by symbol-table index.
std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t max_len);

// "a.b.a" with '.' separating symbols; the empty word prints as "eps".
std::string format_word(const Alphabet& alphabet, const Word& w);

// Inverse of format_word. Accepts "eps" (empty word), '.'-separated symbol
// names, and, as a fallback for single-character symbol tables, a bare
// string of symbols.
Word parse_word(const Alphabet& alphabet, std::string_view text);

struct AgreementReport {
    std::size_t words_checked = 0;

    struct Disagreement {
        Word word;
        double value_a = 0.0;
        double value_b = 0.0;
    };
    struct BoundaryFlag {
        Word word;
        char machine = 'a';  // which side hit the band
        double value = 0.0;
        double distance = 0.0;  // |value - cutpoint|
    };

    std::vector<Disagreement> disagreements;
    std::vector<BoundaryFlag> boundary_flags;

    bool agreed() const { return disagreements.empty(); }
    bool clean() const { return disagreements.empty() && boundary_flags.empty(); }
};

// Compares strict-cutpoint decisions of two machines (each against its own
// cutpoint) over every word up to max_len. Float-mode values inside the
// boundary band are flagged, never decided. Throws on alphabet mismatch.
AgreementReport check_agreement(const Machine& a, const Machine& b, std::size_t max_len,
                                double boundary_tol = k_boundary_tol);

// Same comparison over an explicit word list.
AgreementReport check_agreement_on(const Machine& a, const Machine& b, const std::vector<Word>& words,
                                   double boundary_tol = k_boundary_tol);

// Halfspace shattering on the probability simplex: which subsets of the
// given distributions can be cut out strictly by some b in [0,1]^m at the
// threshold. Feasibility per subset is decided by exact-rational LP with a
// maximized strictness slack.
struct ShatterInstance {
    std::vector<Vec<Rational>> points;
    Rational threshold;

    struct SubsetResult {
        std::uint32_t mask = 0;
        bool feasible = false;
        Vec<Rational> witness;  // b achieving the cut (when feasible)
        Rational slack;         // maximized strictness margin
    };
    std::vector<SubsetResult> results;
    bool shattered = false;  // every subset feasible
};

ShatterInstance halfspace_shatter(const std::vector<Vec<Rational>>& points, const Rational& threshold);

// Threshold-zero specialization: concepts depend only on the support set of
// b, so 2^m support candidates decide every subset. Agrees with
// halfspace_shatter at threshold 0.
ShatterInstance support_shatter(const std::vector<Vec<Rational>>& points);

}  // namespace cutpoint
