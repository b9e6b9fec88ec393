#include "cutpoint/verify.hpp"

#include <algorithm>

namespace cutpoint {

std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> words;
    words.push_back({});
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = words.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (std::size_t s = 0; s < alphabet_size; ++s) {
                Word w = words[i];
                w.push_back(s);
                words.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return words;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back('.');
        out += alphabet.symbols[w[i]];
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
    if (text == "eps" || text.empty()) return {};
    Word w;
    std::size_t start = 0;
    bool all_found = true;
    while (start <= text.size()) {
        std::size_t end = text.find('.', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(start, end - start);
        if (auto idx = alphabet.index(token)) {
            w.push_back(*idx);
        } else {
            all_found = false;
            break;
        }
        start = end + 1;
        if (end == text.size()) break;
    }
    if (all_found) return w;

    // fallback: every character its own symbol
    Word chars;
    for (char c : text) {
        auto idx = alphabet.index(std::string_view(&c, 1));
        if (!idx) throw parse_error("unknown symbol in word '" + std::string(text) + "'");
        chars.push_back(*idx);
    }
    return chars;
}

namespace {

// Incremental evaluation state: a stack of row vectors (or densities), one
// per consumed prefix, so sibling words share prefix work during the walk.
template <typename T>
struct GfaCursor {
    const Gfa<T>* m;
    std::vector<Vec<T>> stack;

    explicit GfaCursor(const Gfa<T>& g) : m(&g) { stack.push_back(g.initial); }
    void push(std::size_t sym) { stack.push_back(vec_mat(stack.back(), m->transition[sym])); }
    void pop() { stack.pop_back(); }
    Decision decide_here(double tol) const {
        T value = dot(stack.back(), m->final_weights);
        if constexpr (std::is_same_v<T, Rational>)
            return decide(value, m->cutpoint);
        else
            return decide(value, m->cutpoint, tol);
    }
};

template <typename T>
struct PfaCursor {
    const Pfa<T>* m;
    Vec<T> accept_col;
    std::vector<Vec<T>> stack;

    explicit PfaCursor(const Pfa<T>& p) : m(&p), accept_col(p.accept_column()) {
        stack.push_back(p.initial);
    }
    void push(std::size_t sym) { stack.push_back(vec_mat(stack.back(), m->transition[sym])); }
    void pop() { stack.pop_back(); }
    Decision decide_here(double tol) const {
        T value = dot(stack.back(), accept_col);
        if constexpr (std::is_same_v<T, Rational>)
            return decide(value, m->cutpoint);
        else
            return decide(value, m->cutpoint, tol);
    }
};

struct QfaCursor {
    const Gqfa* m;
    std::vector<CMatrix> stack;

    explicit QfaCursor(const Gqfa& q) : m(&q) { stack.push_back(q.initial_state); }
    void push(std::size_t sym) { stack.push_back(apply_channel(m->channel[sym], stack.back())); }
    void pop() { stack.pop_back(); }
    Decision decide_here(double tol) const {
        return decide(trace(m->accept_projector * stack.back()).real(), m->cutpoint, tol);
    }
};

template <typename T>
GfaCursor<T> make_cursor(const Gfa<T>& g) {
    return GfaCursor<T>(g);
}
template <typename T>
PfaCursor<T> make_cursor(const Pfa<T>& p) {
    return PfaCursor<T>(p);
}
inline QfaCursor make_cursor(const Gqfa& q) { return QfaCursor(q); }

void record(AgreementReport& report, const Word& w, const Decision& da, const Decision& db) {
    ++report.words_checked;
    bool undecidable = false;
    if (da.outcome == Outcome::boundary) {
        report.boundary_flags.push_back({w, 'a', da.value, da.margin});
        undecidable = true;
    }
    if (db.outcome == Outcome::boundary) {
        report.boundary_flags.push_back({w, 'b', db.value, db.margin});
        undecidable = true;
    }
    if (!undecidable && da.outcome != db.outcome)
        report.disagreements.push_back({w, da.value, db.value});
}

template <typename CA, typename CB>
void walk_pair(CA& a, CB& b, std::size_t nsym, std::size_t max_len, double tol, Word& w,
               AgreementReport& report) {
    record(report, w, a.decide_here(tol), b.decide_here(tol));
    if (w.size() == max_len) return;
    for (std::size_t s = 0; s < nsym; ++s) {
        a.push(s);
        b.push(s);
        w.push_back(s);
        walk_pair(a, b, nsym, max_len, tol, w, report);
        w.pop_back();
        b.pop();
        a.pop();
    }
}

bool word_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

// Reports merge in canonical word order regardless of traversal order.
void canonicalize(AgreementReport& report) {
    std::sort(report.disagreements.begin(), report.disagreements.end(),
              [](const auto& l, const auto& r) { return word_less(l.word, r.word); });
    std::sort(report.boundary_flags.begin(), report.boundary_flags.end(), [](const auto& l, const auto& r) {
        if (l.word != r.word) return word_less(l.word, r.word);
        return l.machine < r.machine;
    });
}

}  // namespace

AgreementReport check_agreement(const Machine& a, const Machine& b, std::size_t max_len,
                                double boundary_tol) {
    if (machine_alphabet(a) != machine_alphabet(b))
        throw error("check_agreement: machines have different alphabets");
    AgreementReport report;
    std::visit(
        [&](const auto& ma, const auto& mb) {
            auto ca = make_cursor(ma);
            auto cb = make_cursor(mb);
            Word w;
            walk_pair(ca, cb, machine_alphabet(a).size(), max_len, boundary_tol, w, report);
        },
        a, b);
    canonicalize(report);
    return report;
}

AgreementReport check_agreement_on(const Machine& a, const Machine& b, const std::vector<Word>& words,
                                   double boundary_tol) {
    if (machine_alphabet(a) != machine_alphabet(b))
        throw error("check_agreement_on: machines have different alphabets");
    AgreementReport report;
    for (const Word& w : words)
        record(report, w, machine_decide(a, w, boundary_tol), machine_decide(b, w, boundary_tol));
    canonicalize(report);
    return report;
}

namespace {

// Strict feasibility of one subset: exists b in [0,1]^m with point.b strictly
// above the threshold on the subset and at most the threshold off it. The LP
// maximizes the strictness slack; strictly feasible iff the optimum is
// positive (a capped slack keeps the program bounded).
ShatterInstance::SubsetResult subset_feasibility(const std::vector<Vec<Rational>>& points,
                                                 const Rational& threshold, std::uint32_t mask) {
    const std::size_t m = points.empty() ? 0 : points[0].size();
    const std::size_t nvars = m + 1;  // b_1..b_m, slack

    Vec<Rational> objective(nvars, Rational(0));
    objective[m] = Rational(1);

    std::vector<LpConstraint> cons;
    for (std::size_t k = 0; k < points.size(); ++k) {
        LpConstraint c;
        c.coeffs.assign(nvars, Rational(0));
        for (std::size_t i = 0; i < m; ++i) c.coeffs[i] = points[k][i];
        if ((mask >> k) & 1) {
            c.coeffs[m] = Rational(-1);
            c.sense = Sense::ge;  // point.b - slack >= threshold
        } else {
            c.sense = Sense::le;  // point.b <= threshold
        }
        c.rhs = threshold;
        cons.push_back(std::move(c));
    }
    for (std::size_t i = 0; i <= m; ++i) {  // b_i <= 1 and slack <= 1
        LpConstraint c;
        c.coeffs.assign(nvars, Rational(0));
        c.coeffs[i] = Rational(1);
        c.sense = Sense::le;
        c.rhs = Rational(1);
        cons.push_back(std::move(c));
    }

    LpResult lp = solve_lp_max(objective, cons);
    ShatterInstance::SubsetResult res;
    res.mask = mask;
    res.slack = Rational(0);
    if (lp.status == LpStatus::optimal && lp.objective > 0) {
        res.feasible = true;
        res.slack = lp.objective;
        res.witness.assign(lp.solution.begin(), lp.solution.begin() + long(m));
    }
    return res;
}

void check_simplex_points(const std::vector<Vec<Rational>>& points) {
    if (points.empty()) throw error("shatter: no points given");
    if (points.size() > 20) throw error("shatter: more than 20 points");
    const std::size_t m = points[0].size();
    for (const auto& p : points) {
        if (p.size() != m) throw error("shatter: points of mixed dimension");
        Rational sum(0);
        for (const Rational& x : p) {
            if (x < 0) throw error("shatter: point has a negative entry");
            sum += x;
        }
        if (sum != 1) throw error("shatter: point does not lie on the probability simplex");
    }
}

}  // namespace

ShatterInstance halfspace_shatter(const std::vector<Vec<Rational>>& points, const Rational& threshold) {
    check_simplex_points(points);
    ShatterInstance inst;
    inst.points = points;
    inst.threshold = threshold;
    inst.shattered = true;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << points.size()); ++mask) {
        inst.results.push_back(subset_feasibility(points, threshold, mask));
        if (!inst.results.back().feasible) inst.shattered = false;
    }
    return inst;
}

ShatterInstance support_shatter(const std::vector<Vec<Rational>>& points) {
    check_simplex_points(points);
    const std::size_t m = points[0].size();
    if (m > 20) throw error("support_shatter: dimension too large to enumerate supports");

    ShatterInstance inst;
    inst.points = points;
    inst.threshold = Rational(0);

    // A support set T realizes the subset of points whose support meets T.
    std::vector<bool> seen(std::size_t(1) << points.size(), false);
    std::vector<std::uint32_t> witness_support(std::size_t(1) << points.size(), 0);
    for (std::uint32_t support = 0; support < (std::uint32_t(1) << m); ++support) {
        std::uint32_t cut = 0;
        for (std::size_t k = 0; k < points.size(); ++k)
            for (std::size_t i = 0; i < m; ++i)
                if (((support >> i) & 1) && points[k][i] > 0) {
                    cut |= std::uint32_t(1) << k;
                    break;
                }
        if (!seen[cut]) {
            seen[cut] = true;
            witness_support[cut] = support;
        }
    }

    inst.shattered = true;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << points.size()); ++mask) {
        ShatterInstance::SubsetResult res;
        res.mask = mask;
        res.feasible = seen[mask];
        res.slack = Rational(0);
        if (res.feasible) {
            res.witness.assign(m, Rational(0));
            for (std::size_t i = 0; i < m; ++i)
                if ((witness_support[mask] >> i) & 1) res.witness[i] = Rational(1);
        } else {
            inst.shattered = false;
        }
        inst.results.push_back(std::move(res));
    }
    return inst;
}

}  // namespace cutpoint
