#pragma once

#include "cutpoint/rational.hpp"
#include "cutpoint/matrix.hpp"

namespace cutpoint {

enum class Sense { le, ge, eq };

struct LpConstraint {
    Vec<Rational> coeffs;
    Sense sense = Sense::le;
    Rational rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational objective;
    Vec<Rational> solution;
};

// maximize objective . x subject to the constraints and x >= 0, in exact
// rational arithmetic. Two-phase dense simplex with Bland's rule; intended
// for the small feasibility systems of the shattering checker, not for
// large programs.
LpResult solve_lp_max(const Vec<Rational>& objective, const std::vector<LpConstraint>& constraints);

}  // namespace cutpoint
