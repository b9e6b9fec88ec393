#include "cutpoint/simplex.hpp"

namespace cutpoint {

namespace {

// Dense tableau: one row per constraint (equality form), rhs kept separately,
// basis[i] names the variable owning row i. Reduced costs are recomputed per
// iteration; the instances here are tiny.
struct Tableau {
    std::vector<Vec<Rational>> rows;
    Vec<Rational> rhs;
    std::vector<std::size_t> basis;

    std::size_t vars() const { return rows.empty() ? 0 : rows[0].size(); }

    void pivot(std::size_t pr, std::size_t pc) {
        Rational inv = Rational(1) / rows[pr][pc];
        for (auto& x : rows[pr]) x *= inv;
        rhs[pr] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pr) continue;
            Rational factor = rows[i][pc];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < vars(); ++j) rows[i][j] -= factor * rows[pr][j];
            rhs[i] -= factor * rhs[pr];
        }
        basis[pr] = pc;
    }

    // Bland's rule; `allowed` masks which columns may enter. Returns false
    // once no reduced cost is positive (optimum reached); throws never,
    // reports unboundedness via the out-flag.
    bool step(const Vec<Rational>& cost, const std::vector<bool>& allowed, bool& unbounded) {
        unbounded = false;
        const std::size_t n = vars();
        Vec<Rational> dual(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) dual[i] = cost[basis[i]];

        for (std::size_t j = 0; j < n; ++j) {
            if (!allowed[j]) continue;
            Rational reduced = cost[j];
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (dual[i] != 0) reduced -= dual[i] * rows[i][j];
            if (!(reduced > 0)) continue;

            // ratio test, ties broken by smallest basis variable
            bool found = false;
            std::size_t pr = 0;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!(rows[i][j] > 0)) continue;
                Rational ratio = rhs[i] / rows[i][j];
                if (!found || ratio < best || (ratio == best && basis[i] < basis[pr])) {
                    found = true;
                    pr = i;
                    best = ratio;
                }
            }
            if (!found) {
                unbounded = true;
                return false;
            }
            pivot(pr, j);
            return true;
        }
        return false;
    }
};

}  // namespace

LpResult solve_lp_max(const Vec<Rational>& objective, const std::vector<LpConstraint>& constraints) {
    const std::size_t nvars = objective.size();
    const std::size_t nrows = constraints.size();

    // slack layout: one slack/surplus column per inequality
    std::size_t nslack = 0;
    for (const auto& c : constraints)
        if (c.sense != Sense::eq) ++nslack;
    const std::size_t nart = nrows;
    const std::size_t total = nvars + nslack + nart;

    Tableau t;
    t.rows.assign(nrows, Vec<Rational>(total));
    t.rhs.assign(nrows, Rational(0));
    t.basis.assign(nrows, 0);

    std::size_t slack_at = nvars;
    for (std::size_t i = 0; i < nrows; ++i) {
        const auto& c = constraints[i];
        if (c.coeffs.size() != nvars) throw error("solve_lp_max: constraint width mismatch");
        for (std::size_t j = 0; j < nvars; ++j) t.rows[i][j] = c.coeffs[j];
        if (c.sense == Sense::le)
            t.rows[i][slack_at++] = Rational(1);
        else if (c.sense == Sense::ge)
            t.rows[i][slack_at++] = Rational(-1);
        t.rhs[i] = c.rhs;
        if (t.rhs[i] < 0) {
            for (auto& x : t.rows[i]) x = -x;
            t.rhs[i] = -t.rhs[i];
        }
        t.rows[i][nvars + nslack + i] = Rational(1);
        t.basis[i] = nvars + nslack + i;
    }

    // phase 1: drive the artificial variables to zero
    Vec<Rational> phase1_cost(total, Rational(0));
    for (std::size_t i = 0; i < nart; ++i) phase1_cost[nvars + nslack + i] = Rational(-1);
    std::vector<bool> allow_all(total, true);
    bool unbounded = false;
    while (t.step(phase1_cost, allow_all, unbounded)) {
    }
    Rational art_sum(0);
    for (std::size_t i = 0; i < nrows; ++i)
        if (t.basis[i] >= nvars + nslack) art_sum += t.rhs[i];
    if (art_sum != 0) return {LpStatus::infeasible, Rational(0), {}};

    // pivot lingering zero-valued artificials out of the basis when
    // possible; rows that cannot be repaired are redundant and get dropped
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.basis[i] < nvars + nslack) continue;
        for (std::size_t j = 0; j < nvars + nslack; ++j) {
            if (t.rows[i][j] != 0) {
                t.pivot(i, j);
                break;
            }
        }
    }
    for (std::size_t i = t.rows.size(); i-- > 0;) {
        if (t.basis[i] < nvars + nslack) continue;
        t.rows.erase(t.rows.begin() + long(i));
        t.rhs.erase(t.rhs.begin() + long(i));
        t.basis.erase(t.basis.begin() + long(i));
    }

    // phase 2: real objective, artificial columns barred
    Vec<Rational> cost(total, Rational(0));
    for (std::size_t j = 0; j < nvars; ++j) cost[j] = objective[j];
    std::vector<bool> allowed(total, true);
    for (std::size_t j = nvars + nslack; j < total; ++j) allowed[j] = false;
    while (t.step(cost, allowed, unbounded)) {
    }
    if (unbounded) return {LpStatus::unbounded, Rational(0), {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.solution.assign(nvars, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < nvars) res.solution[t.basis[i]] = t.rhs[i];
    res.objective = Rational(0);
    for (std::size_t j = 0; j < nvars; ++j) res.objective += objective[j] * res.solution[j];
    return res;
}

}  // namespace cutpoint
