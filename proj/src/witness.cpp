#include "cutpoint/witness.hpp"

#include <cmath>
#include <limits>

namespace cutpoint {

double choose_epsilon(const HermitianBasis& traceless_basis) {
    double max_norm = 0.0;
    for (const CMatrix& h : traceless_basis.elements) max_norm = std::max(max_norm, operator_norm(h));
    return 1.0 / (2.0 * double(traceless_basis.dim) * max_norm);
}

double triangle_norm_bound(const HermitianBasis& traceless_basis) {
    double sum = 0.0;
    for (const CMatrix& h : traceless_basis.elements) sum += operator_norm(h);
    return sum;
}

double exact_sign_norm_bound(const HermitianBasis& traceless_basis) {
    const std::size_t d = traceless_basis.size();
    if (d == 0) return 0.0;
    if (d > 12) throw error("exact_sign_norm_bound: too many directions for exhaustive enumeration");
    const std::size_t n = traceless_basis.dim;
    double best = 0.0;
    // +s and -s share a norm; fix the last sign to +1.
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (d - 1)); ++bits) {
        CMatrix x(n, n);
        for (std::size_t j = 0; j < d; ++j) {
            double sj = (j < d - 1 && ((bits >> j) & 1)) ? -1.0 : 1.0;
            x = x + cxd(sj, 0.0) * traceless_basis.elements[j];
        }
        best = std::max(best, operator_norm(x));
    }
    return best;
}

WitnessParams witness_params(std::size_t n, bool exact_bound) {
    if (n < 2) throw error("witness_params: dimension must be at least 2");
    WitnessParams p;
    p.dim = n;
    p.directions = n * n - 1;
    p.basis = gell_mann_basis(n, /*traceless_only=*/true);
    p.epsilon = choose_epsilon(p.basis);
    p.exact_bound = exact_bound;
    p.norm_bound = exact_bound ? exact_sign_norm_bound(p.basis) : triangle_norm_bound(p.basis);
    p.strength = 1.0 / (4.0 * p.norm_bound);
    return p;
}

CMatrix prepared_state(const WitnessParams& params, std::size_t k) {
    if (k < 1 || k > params.directions) throw error("prepared_state: index out of range");
    const std::size_t n = params.dim;
    CMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i) rho(i, i) = cxd(1.0 / double(n), 0.0);
    return rho + cxd(params.epsilon, 0.0) * params.basis.elements[k - 1];
}

Channel prepare_channel(const WitnessParams& params, std::size_t k) {
    const std::size_t n = params.dim;
    CMatrix rho = prepared_state(params, k);
    EigenSystem es = hermitian_eigensystem(rho);

    // Replacement channel: Kraus operators sqrt(mu_i) |v_i><j| over all
    // eigenpairs i and computational basis states j.
    Channel e;
    e.dim = n;
    for (std::size_t i = 0; i < n; ++i) {
        double mu = es.values[i];
        if (mu <= 0.0) continue;  // prepared states are strictly positive; guard anyway
        double root = std::sqrt(mu);
        for (std::size_t j = 0; j < n; ++j) {
            CMatrix kraus(n, n);
            for (std::size_t r = 0; r < n; ++r) kraus(r, j) = root * es.vectors(r, i);
            e.kraus.push_back(kraus);
        }
    }
    return e;
}

TestSymbol test_channel(const WitnessParams& params, const SignVector& signs) {
    if (signs.size() != params.directions) throw error("test_channel: sign vector length mismatch");
    const std::size_t n = params.dim;

    TestSymbol t;
    t.signs = signs;
    t.observable = CMatrix(n, n);
    for (std::size_t j = 0; j < signs.size(); ++j) {
        if (signs[j] != 1 && signs[j] != -1) throw error("test_channel: signs must be +1 or -1");
        t.observable = t.observable + cxd(double(signs[j]), 0.0) * params.basis.elements[j];
    }
    CMatrix half_id(n, n);
    for (std::size_t i = 0; i < n; ++i) half_id(i, i) = cxd(0.5, 0.0);
    t.effect = half_id + cxd(params.strength, 0.0) * t.observable;

    EigenSystem es = hermitian_eigensystem(t.effect);
    t.channel.dim = n;
    // Accepting operators land in |0>, rejecting ones in |1>; acceptance
    // probability against the fixed projector equals Tr(effect rho).
    for (std::size_t i = 0; i < n; ++i) {
        double lam = es.values[i];
        CMatrix acc(n, n), rej(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            acc(0, c) = std::sqrt(std::max(lam, 0.0)) * std::conj(es.vectors(c, i));
            rej(1, c) = std::sqrt(std::max(1.0 - lam, 0.0)) * std::conj(es.vectors(c, i));
        }
        t.channel.kraus.push_back(acc);
        t.channel.kraus_extra.push_back(rej);
    }
    return t;
}

std::string prepare_symbol_name(std::size_t k) { return "p" + std::to_string(k); }

std::string test_symbol_name(const SignVector& s) {
    std::string name = "tau:";
    for (int v : s) name.push_back(v > 0 ? '+' : '-');
    return name;
}

std::optional<SignVector> parse_test_symbol(std::string_view name) {
    if (!name.starts_with("tau:")) return std::nullopt;
    SignVector s;
    for (char c : name.substr(4)) {
        if (c == '+')
            s.push_back(1);
        else if (c == '-')
            s.push_back(-1);
        else
            return std::nullopt;
    }
    if (s.empty()) return std::nullopt;
    return s;
}

std::optional<std::size_t> parse_prepare_symbol(std::string_view name) {
    if (name.size() < 2 || name[0] != 'p') return std::nullopt;
    std::size_t k = 0;
    for (char c : name.substr(1)) {
        if (c < '0' || c > '9') return std::nullopt;
        k = k * 10 + std::size_t(c - '0');
    }
    return k >= 1 ? std::optional<std::size_t>(k) : std::nullopt;
}

Gqfa build_witness(const WitnessParams& params, const std::vector<SignVector>& tests) {
    const std::size_t n = params.dim;
    Gqfa q;
    q.cutpoint = 0.5;
    q.initial_state = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) q.initial_state(i, i) = cxd(1.0 / double(n), 0.0);
    q.accept_projector = CMatrix(n, n);
    q.accept_projector(0, 0) = cxd(1.0, 0.0);

    for (std::size_t k = 1; k <= params.directions; ++k) {
        q.alphabet.symbols.push_back(prepare_symbol_name(k));
        q.channel.push_back(prepare_channel(params, k));
    }
    for (const SignVector& s : tests) {
        std::string name = test_symbol_name(s);
        if (q.alphabet.index(name)) continue;  // already materialized
        q.alphabet.symbols.push_back(name);
        q.channel.push_back(test_channel(params, s).channel);
    }
    return q;
}

Gqfa build_witness(std::size_t n) { return build_witness(witness_params(n)); }

double witness_acceptance(const Gqfa& witness, std::size_t k, const SignVector& signs) {
    auto prep = witness.alphabet.index(prepare_symbol_name(k));
    auto test = witness.alphabet.index(test_symbol_name(signs));
    if (!prep || !test) throw error("witness_acceptance: symbol not materialized in this machine");
    return eval_qfa(witness, {*prep, *test});
}

SignVector subset_signs(std::uint64_t subset_mask, std::size_t directions) {
    SignVector s(directions, -1);
    for (std::size_t k = 0; k < directions; ++k)
        if ((subset_mask >> k) & 1) s[k] = 1;
    return s;
}

ShatterReport verify_shattering(const WitnessParams& params, const std::vector<std::uint64_t>& subset_masks) {
    std::vector<SignVector> tests;
    tests.reserve(subset_masks.size());
    for (std::uint64_t mask : subset_masks) tests.push_back(subset_signs(mask, params.directions));
    Gqfa q = build_witness(params, tests);

    ShatterReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < subset_masks.size(); ++t) {
        const std::uint64_t mask = subset_masks[t];
        for (std::size_t k = 1; k <= params.directions; ++k) {
            double value = witness_acceptance(q, k, tests[t]);
            Decision d = decide(value, 0.5);
            bool expected = (mask >> (k - 1)) & 1;
            ++report.checks;
            report.min_margin = std::min(report.min_margin, d.margin);
            bool correct = d.outcome == (expected ? Outcome::accept : Outcome::reject);
            if (!correct) report.failures.push_back({k, mask, value, expected, d.outcome});
        }
    }
    return report;
}

std::vector<std::uint64_t> all_subset_masks(std::size_t directions) {
    if (directions > 20) throw error("all_subset_masks: too many directions to enumerate");
    std::vector<std::uint64_t> masks;
    masks.reserve(std::size_t(1) << directions);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << directions); ++m) masks.push_back(m);
    return masks;
}

}  // namespace cutpoint
