#include "cutpoint/convert.hpp"

#include "cutpoint/linearize.hpp"

namespace cutpoint {

Gfa<Rational> shift_cutpoint(const Gfa<Rational>& g) {
    const std::size_t k = g.states();
    Gfa<Rational> out;
    out.alphabet = g.alphabet;
    out.cutpoint = Rational(0);

    out.initial = g.initial;
    out.initial.push_back(-g.cutpoint);

    out.final_weights = g.final_weights;
    out.final_weights.push_back(Rational(1));

    for (const RMatrix& a : g.transition) {
        RMatrix m(k + 1, k + 1);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) m(r, c) = a(r, c);
        m(k, k) = Rational(1);
        out.transition.push_back(m);
    }
    return out;
}

SignSplit sign_split(const Gfa<Rational>& zero_cutpoint) {
    if (zero_cutpoint.cutpoint != Rational(0)) throw error("sign_split: cutpoint must be 0");
    const std::size_t m = zero_cutpoint.states();
    SignSplit out;

    out.initial.assign(2 * m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        const Rational& u = zero_cutpoint.initial[i];
        if (u > 0)
            out.initial[i] = u;
        else
            out.initial[m + i] = -u;
    }

    out.final_weights.assign(2 * m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        out.final_weights[i] = zero_cutpoint.final_weights[i];
        out.final_weights[m + i] = -zero_cutpoint.final_weights[i];
    }

    for (const RMatrix& a : zero_cutpoint.transition) {
        RMatrix split(2 * m, 2 * m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                const Rational& x = a(r, c);
                Rational pos = x > 0 ? x : Rational(0);
                Rational neg = x < 0 ? Rational(-x) : Rational(0);
                split(r, c) = pos;
                split(m + r, m + c) = pos;
                split(r, m + c) = neg;
                split(m + r, c) = neg;
            }
        out.transition.push_back(split);
    }
    return out;
}

std::vector<RMatrix> zero_sum_embed(const std::vector<RMatrix>& split_transition) {
    std::vector<RMatrix> out;
    out.reserve(split_transition.size());
    for (const RMatrix& a : split_transition) {
        const std::size_t d = a.rows();
        RMatrix b(d + 2, d + 2);
        Rational total(0);
        for (std::size_t r = 0; r < d; ++r) {
            Rational row_sum(0);
            for (std::size_t c = 0; c < d; ++c) {
                b(r + 1, c + 1) = a(r, c);
                row_sum += a(r, c);
            }
            b(r + 1, 0) = -row_sum;
            total += row_sum;
        }
        for (std::size_t c = 0; c < d; ++c) {
            Rational col_sum(0);
            for (std::size_t r = 0; r < d; ++r) col_sum += a(r, c);
            b(d + 1, c + 1) = -col_sum;
        }
        b(d + 1, 0) = total;
        out.push_back(b);
    }
    return out;
}

Rational choose_scale_constant(const std::vector<RMatrix>& balanced, const Rational& margin) {
    if (!(margin > 0)) throw error("choose_scale_constant: margin must be positive");
    Rational max_entry(0);
    for (const RMatrix& b : balanced)
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                Rational a = rational_abs(b(r, c));
                if (a > max_entry) max_entry = a;
            }
    return max_entry + margin;
}

std::vector<RMatrix> stochasticize(const std::vector<RMatrix>& balanced, const Rational& scale,
                                   std::size_t padded_dim) {
    const Rational denom = scale * Rational(long(padded_dim));
    std::vector<RMatrix> out;
    out.reserve(balanced.size());
    for (const RMatrix& b : balanced) {
        if (b.rows() != padded_dim || b.cols() != padded_dim)
            throw error("stochasticize: balanced matrix has wrong dimension");
        RMatrix p(padded_dim, padded_dim);
        for (std::size_t r = 0; r < padded_dim; ++r)
            for (std::size_t c = 0; c < padded_dim; ++c) {
                if (rational_abs(b(r, c)) >= scale)
                    throw error("stochasticize: entry magnitude reaches the scale constant");
                p(r, c) = (b(r, c) + scale) / denom;
            }
        out.push_back(p);
    }
    return out;
}

EndMarkerDecision end_marker_decision(const Vec<Rational>& decision) {
    EndMarkerDecision out;
    out.bound = Rational(0);
    for (const Rational& gi : decision) {
        Rational a = rational_abs(gi);
        if (a > out.bound) out.bound = a;
    }
    if (out.bound == 0) {
        out.degenerate = true;
        return out;
    }
    const Rational half(1, 2);
    out.accept_prob.reserve(decision.size());
    for (const Rational& gi : decision) out.accept_prob.push_back(half + gi / (2 * out.bound));
    return out;
}

Pfa<Rational> degenerate_pfa(const Alphabet& alphabet) {
    Pfa<Rational> p;
    p.alphabet = alphabet;
    p.initial = {Rational(1), Rational(0)};
    for (std::size_t s = 0; s < alphabet.size(); ++s) p.transition.push_back(RMatrix::identity(2));
    p.end_marker = RMatrix::identity(2);
    p.accepting = {};  // accepts nothing: the recognized language is empty
    p.cutpoint = Rational(1, 2);
    return p;
}

GfaToPfaResult gfa_to_pfa(const Gfa<Rational>& g, const Rational& scale_margin) {
    ValidationReport rep = validate(g);
    if (!rep.ok()) throw validation_error("gfa_to_pfa: invalid machine\n" + rep.summary());

    GfaToPfaResult result;
    ConversionTrace& tr = result.trace;

    tr.shifted = shift_cutpoint(g);
    SignSplit split = sign_split(tr.shifted);
    tr.split_initial = split.initial;
    tr.split_transition = split.transition;
    tr.split_final = split.final_weights;

    tr.balanced = zero_sum_embed(tr.split_transition);
    tr.scale = choose_scale_constant(tr.balanced, scale_margin);
    tr.padded_dim = 2 * g.states() + 4;

    tr.initial_mass = Rational(0);
    for (const Rational& u : tr.split_initial) tr.initial_mass += u;  // entries are nonnegative
    if (tr.initial_mass == 0) {
        tr.degenerate = true;
        tr.degenerate_reason = "initial weights vanish; the word function is identically the cutpoint";
        result.pfa = degenerate_pfa(g.alphabet);
        return result;
    }

    // decision vector: split final weights padded by the two border states
    tr.decision.assign(tr.padded_dim, Rational(0));
    for (std::size_t i = 0; i < tr.split_final.size(); ++i) tr.decision[i + 1] = tr.split_final[i];

    EndMarkerDecision end = end_marker_decision(tr.decision);
    tr.decision_bound = end.bound;
    if (end.degenerate) {
        tr.degenerate = true;
        tr.degenerate_reason = "decision weights vanish; the word function is identically the cutpoint";
        result.pfa = degenerate_pfa(g.alphabet);
        return result;
    }
    tr.accept_prob = end.accept_prob;

    const std::size_t n = tr.padded_dim;       // pipeline states
    const std::size_t total = n + 2;           // plus the two sinks
    const std::size_t acc = n, rej = n + 1;

    Pfa<Rational>& p = result.pfa;
    p.alphabet = g.alphabet;
    p.cutpoint = Rational(1, 2);
    p.accepting = {acc};

    p.initial.assign(total, Rational(0));
    for (std::size_t i = 0; i < tr.split_initial.size(); ++i)
        p.initial[i + 1] = tr.split_initial[i] / tr.initial_mass;

    std::vector<RMatrix> stochastic = stochasticize(tr.balanced, tr.scale, n);
    for (const RMatrix& ps : stochastic) {
        RMatrix full(total, total);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) full(r, c) = ps(r, c);
        full(acc, acc) = Rational(1);
        full(rej, rej) = Rational(1);
        p.transition.push_back(full);
    }

    p.end_marker = RMatrix(total, total);
    for (std::size_t i = 0; i < n; ++i) {
        p.end_marker(i, acc) = tr.accept_prob[i];
        p.end_marker(i, rej) = Rational(1) - tr.accept_prob[i];
    }
    p.end_marker(acc, acc) = Rational(1);
    p.end_marker(rej, rej) = Rational(1);
    return result;
}

Gfa<Rational> promote_exact(const Gfa<double>& g) {
    Gfa<Rational> out;
    out.alphabet = g.alphabet;
    out.cutpoint = rational_from_double(g.cutpoint);
    out.initial.reserve(g.initial.size());
    for (double x : g.initial) out.initial.push_back(rational_from_double(x));
    out.final_weights.reserve(g.final_weights.size());
    for (double x : g.final_weights) out.final_weights.push_back(rational_from_double(x));
    for (const DMatrix& a : g.transition) {
        RMatrix m(a.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = rational_from_double(a(r, c));
        out.transition.push_back(m);
    }
    return out;
}

GfaToPfaResult qfa_to_pfa(const Gqfa& q, const Rational& scale_margin) {
    return gfa_to_pfa(promote_exact(qfa_to_gfa(q)), scale_margin);
}

}  // namespace cutpoint
