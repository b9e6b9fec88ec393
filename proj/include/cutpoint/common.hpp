#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cutpoint {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input documents, unknown symbols, bad flags.
struct parse_error : error {
    using error::error;
};

// A machine violates a structural invariant (stochasticity, CPTP, ...).
struct validation_error : error {
    using error::error;
};

// A float-mode acceptance value fell inside the boundary band around the
// cutpoint; strict comparison is not decidable there.
struct boundary_error : error {
    boundary_error(double value, double cutpoint, double tol)
        : error("value " + std::to_string(value) + " within " + std::to_string(tol) +
                " of cutpoint " + std::to_string(cutpoint)),
          value(value),
          cutpoint(cutpoint),
          tol(tol) {}
    double value;
    double cutpoint;
    double tol;
};

// Words are sequences of symbol-table indices. The end marker of a PFA is
// implicit and never appears in a word.
using Word = std::vector<std::size_t>;

struct Alphabet {
    std::vector<std::string> symbols;

    std::size_t size() const { return symbols.size(); }

    std::optional<std::size_t> index(std::string_view name) const {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const Alphabet&) const = default;
};

}  // namespace cutpoint
