#include "cutpoint/models.hpp"

#include <cmath>
#include <sstream>

namespace cutpoint {

CMatrix Channel::completeness() const {
    CMatrix acc(dim, dim);
    for (const auto* list : {&kraus, &kraus_extra})
        for (const CMatrix& k : *list) acc = acc + adjoint(k) * k;
    return acc;
}

CMatrix apply_channel(const Channel& e, const CMatrix& x) {
    if (!x.square() || x.rows() != e.dim) throw error("apply_channel: dimension mismatch");
    CMatrix out(e.dim, e.dim);
    for (const auto* list : {&e.kraus, &e.kraus_extra})
        for (const CMatrix& k : *list) out = out + k * x * adjoint(k);
    return out;
}

double eval_qfa(const Gqfa& q, const Word& w) {
    detail::check_word(w, q.alphabet.size());
    CMatrix rho = q.initial_state;
    for (std::size_t s : w) rho = apply_channel(q.channel[s], rho);
    cxd f = trace(q.accept_projector * rho);
    return f.real();
}

Decision decide(double value, double cutpoint, double boundary_tol) {
    Decision d;
    d.value = value;
    d.cutpoint = cutpoint;
    d.margin = std::abs(value - cutpoint);
    if (d.margin <= boundary_tol)
        d.outcome = Outcome::boundary;
    else
        d.outcome = value > cutpoint ? Outcome::accept : Outcome::reject;
    return d;
}

Decision decide(const Rational& value, const Rational& cutpoint) {
    Decision d;
    d.value = to_double(value);
    d.cutpoint = to_double(cutpoint);
    d.margin = std::abs(to_double(Rational(value - cutpoint)));
    d.outcome = value > cutpoint ? Outcome::accept : Outcome::reject;
    return d;
}

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const Violation& v : violations)
        os << v.where << ": " << v.message << " (residual " << v.residual << ")\n";
    return os.str();
}

namespace {

void require_dims(ValidationReport& rep, const std::string& where, const CMatrix& m, std::size_t n) {
    if (m.rows() != n || m.cols() != n) {
        rep.violations.push_back({where, 0.0, "expected " + std::to_string(n) + "x" + std::to_string(n) +
                                                 " matrix, got " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols())});
    }
}

template <typename T>
bool entries_finite(const Matrix<T>& m) {
    if constexpr (std::is_same_v<T, double>) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!std::isfinite(m(r, c))) return false;
    }
    return true;
}

// Stochasticity residual of one row: |sum - 1| plus any negative mass.
template <typename T>
void check_stochastic_rows(ValidationReport& rep, const std::string& where, const Matrix<T>& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        T sum{};
        bool nonneg = true;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) < T(0)) nonneg = false;
            sum += m(r, c);
        }
        if (!nonneg)
            rep.violations.push_back({where + " row " + std::to_string(r), 0.0, "negative entry"});
        if constexpr (std::is_same_v<T, Rational>) {
            if (sum != T(1)) {
                double res = std::abs(to_double(Rational(sum - T(1))));
                rep.violations.push_back({where + " row " + std::to_string(r), res, "row sum is not exactly 1"});
            }
        } else {
            double res = std::abs(sum - 1.0);
            if (res > 1e-12)
                rep.violations.push_back({where + " row " + std::to_string(r), res, "row sum differs from 1"});
        }
    }
}

}  // namespace

template <typename T>
ValidationReport validate(const Gfa<T>& g) {
    ValidationReport rep;
    const std::size_t k = g.states();
    if (g.transition.size() != g.alphabet.size())
        rep.violations.push_back({"gfa", 0.0, "one transition matrix per symbol required"});
    if (g.final_weights.size() != k)
        rep.violations.push_back({"gfa final", 0.0, "final vector length differs from state count"});
    for (std::size_t s = 0; s < g.transition.size(); ++s) {
        const auto& m = g.transition[s];
        if (m.rows() != k || m.cols() != k)
            rep.violations.push_back({"gfa transition '" + g.alphabet.symbols[s] + "'", 0.0, "dimension mismatch"});
        if (!entries_finite(m))
            rep.violations.push_back({"gfa transition '" + g.alphabet.symbols[s] + "'", 0.0, "non-finite entry"});
    }
    return rep;
}

template <typename T>
ValidationReport validate(const Pfa<T>& p) {
    ValidationReport rep;
    const std::size_t n = p.states();
    if (p.transition.size() != p.alphabet.size())
        rep.violations.push_back({"pfa", 0.0, "one transition matrix per symbol required"});

    T pi_sum{};
    for (const T& x : p.initial) {
        if (x < T(0)) rep.violations.push_back({"pfa initial", 0.0, "negative probability"});
        pi_sum += x;
    }
    if constexpr (std::is_same_v<T, Rational>) {
        if (pi_sum != T(1))
            rep.violations.push_back({"pfa initial", std::abs(to_double(Rational(pi_sum - T(1)))),
                                      "initial distribution does not sum to 1"});
    } else {
        if (std::abs(pi_sum - 1.0) > 1e-12)
            rep.violations.push_back({"pfa initial", std::abs(pi_sum - 1.0), "initial distribution does not sum to 1"});
    }

    for (std::size_t s = 0; s < p.transition.size(); ++s) {
        const auto& m = p.transition[s];
        if (m.rows() != n || m.cols() != n) {
            rep.violations.push_back({"pfa transition '" + p.alphabet.symbols[s] + "'", 0.0, "dimension mismatch"});
            continue;
        }
        check_stochastic_rows(rep, "pfa transition '" + p.alphabet.symbols[s] + "'", m);
    }
    if (p.end_marker.rows() != n || p.end_marker.cols() != n)
        rep.violations.push_back({"pfa end marker", 0.0, "dimension mismatch"});
    else
        check_stochastic_rows(rep, "pfa end marker", p.end_marker);

    for (std::size_t s : p.accepting)
        if (s >= n) rep.violations.push_back({"pfa accepting", 0.0, "state index out of range"});
    if (p.cutpoint < T(0) || !(p.cutpoint < T(1)))
        rep.violations.push_back({"pfa cutpoint", 0.0, "cutpoint must lie in [0,1)"});
    return rep;
}

ValidationReport validate(const Channel& e, const std::string& where) {
    ValidationReport rep;
    for (const auto* list : {&e.kraus, &e.kraus_extra})
        for (const CMatrix& k : *list)
            if (k.rows() != e.dim || k.cols() != e.dim)
                rep.violations.push_back({where, 0.0, "Kraus operator dimension mismatch"});
    if (!rep.ok()) return rep;
    if (e.kraus.empty() && e.kraus_extra.empty()) {
        rep.violations.push_back({where, 0.0, "no Kraus operators"});
        return rep;
    }
    CMatrix residual = e.completeness() - CMatrix::identity(e.dim);
    double res = max_abs(residual);
    if (res > k_cptp_tol)
        rep.violations.push_back({where, res, "Kraus completeness sum differs from identity"});
    return rep;
}

ValidationReport validate(const Gqfa& q) {
    ValidationReport rep;
    const std::size_t n = q.dim();
    require_dims(rep, "gqfa initial state", q.initial_state, n);
    require_dims(rep, "gqfa accept projector", q.accept_projector, n);
    if (!rep.ok()) return rep;

    if (!is_density(q.initial_state, 1e-10))
        rep.violations.push_back({"gqfa initial state", 0.0, "not a density operator"});

    double herm = hermitian_residual(q.accept_projector);
    if (herm > 1e-10)
        rep.violations.push_back({"gqfa accept projector", herm, "not Hermitian"});
    else {
        CMatrix diff = q.accept_projector * q.accept_projector - q.accept_projector;
        double idem = max_abs(diff);
        if (idem > 1e-10) rep.violations.push_back({"gqfa accept projector", idem, "not idempotent"});
    }

    if (q.channel.size() != q.alphabet.size())
        rep.violations.push_back({"gqfa", 0.0, "one channel per symbol required"});
    for (std::size_t s = 0; s < q.channel.size(); ++s) {
        if (q.channel[s].dim != n) {
            rep.violations.push_back({"gqfa channel '" + q.alphabet.symbols[s] + "'", 0.0, "dimension mismatch"});
            continue;
        }
        ValidationReport sub = validate(q.channel[s], "gqfa channel '" + q.alphabet.symbols[s] + "'");
        for (auto& v : sub.violations) rep.violations.push_back(std::move(v));
    }
    if (q.cutpoint < 0.0 || q.cutpoint >= 1.0)
        rep.violations.push_back({"gqfa cutpoint", 0.0, "cutpoint must lie in [0,1)"});
    return rep;
}

template ValidationReport validate<Rational>(const Gfa<Rational>&);
template ValidationReport validate<double>(const Gfa<double>&);
template ValidationReport validate<Rational>(const Pfa<Rational>&);
template ValidationReport validate<double>(const Pfa<double>&);

const Alphabet& machine_alphabet(const Machine& m) {
    return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet; }, m);
}

Decision machine_decide(const Machine& m, const Word& w, double boundary_tol) {
    return std::visit([&](const auto& x) { return decide_word(x, w, boundary_tol); }, m);
}

double machine_value(const Machine& m, const Word& w) {
    return std::visit(
        [&](const auto& x) -> double {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, Gfa<Rational>>)
                return to_double(eval_gfa(x, w));
            else if constexpr (std::is_same_v<M, Pfa<Rational>>)
                return to_double(eval_pfa(x, w));
            else if constexpr (std::is_same_v<M, Gfa<double>>)
                return eval_gfa(x, w);
            else if constexpr (std::is_same_v<M, Pfa<double>>)
                return eval_pfa(x, w);
            else
                return eval_qfa(x, w);
        },
        m);
}

std::optional<Rational> machine_value_exact(const Machine& m, const Word& w) {
    if (const auto* g = std::get_if<Gfa<Rational>>(&m)) return eval_gfa(*g, w);
    if (const auto* p = std::get_if<Pfa<Rational>>(&m)) return eval_pfa(*p, w);
    return std::nullopt;
}

ValidationReport validate(const Machine& m) {
    return std::visit([](const auto& x) { return validate(x); }, m);
}

std::string machine_kind(const Machine& m) {
    return std::visit(
        [](const auto& x) -> std::string {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, Gfa<Rational>> || std::is_same_v<M, Gfa<double>>)
                return "gfa";
            else if constexpr (std::is_same_v<M, Pfa<Rational>> || std::is_same_v<M, Pfa<double>>)
                return "pfa";
            else
                return "gqfa";
        },
        m);
}

Gqfa embed_pfa(const Pfa<double>& p) {
    const std::size_t n = p.states();
    Gqfa q;
    q.alphabet = p.alphabet;
    q.alphabet.symbols.push_back("#");
    q.cutpoint = p.cutpoint;

    q.initial_state = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) q.initial_state(i, i) = cxd(p.initial[i], 0.0);

    auto stochastic_channel = [n](const DMatrix& m) {
        Channel e;
        e.dim = n;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (m(i, j) == 0.0) continue;
                CMatrix k(n, n);
                k(j, i) = cxd(std::sqrt(m(i, j)), 0.0);
                e.kraus.push_back(k);
            }
        return e;
    };
    for (const auto& m : p.transition) q.channel.push_back(stochastic_channel(m));
    q.channel.push_back(stochastic_channel(p.end_marker));

    q.accept_projector = CMatrix(n, n);
    for (std::size_t s : p.accepting) q.accept_projector(s, s) = cxd(1.0, 0.0);
    return q;
}

double eval_embedded_pfa(const Gqfa& embedded, const Word& w) {
    Word with_end = w;
    with_end.push_back(embedded.alphabet.size() - 1);
    return eval_qfa(embedded, with_end);
}

}  // namespace cutpoint
