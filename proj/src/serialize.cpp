#include "cutpoint/serialize.hpp"

#include <algorithm>
#include <fstream>

namespace cutpoint {

namespace {

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j, const std::string& where) {
    if (!j.is_string()) throw parse_error(where + ": rational values must be \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

double double_from_json(const json& j, const std::string& where) {
    if (!j.is_number()) throw parse_error(where + ": expected a number");
    return j.get<double>();
}

template <typename T>
json scalar_to_json(const T& x) {
    if constexpr (std::is_same_v<T, Rational>)
        return rational_to_json(x);
    else
        return x;
}

template <typename T>
T scalar_from_json(const json& j, const std::string& where) {
    if constexpr (std::is_same_v<T, Rational>)
        return rational_from_json(j, where);
    else
        return double_from_json(j, where);
}

template <typename T>
json vec_to_json(const Vec<T>& v) {
    json out = json::array();
    for (const T& x : v) out.push_back(scalar_to_json(x));
    return out;
}

template <typename T>
Vec<T> vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where + ": expected an array");
    Vec<T> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(scalar_from_json<T>(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

template <typename T>
json matrix_to_json(const Matrix<T>& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

template <typename T>
Matrix<T> matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw parse_error(where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Matrix<T> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw parse_error(where + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = scalar_from_json<T>(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

json cmatrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        out.push_back(std::move(row));
    }
    return out;
}

CMatrix cmatrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw parse_error(where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw parse_error(where + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = j[r][c];
            if (!e.is_array() || e.size() != 2)
                throw parse_error(where + ": complex entries must be [re, im] pairs");
            m(r, c) = cxd(double_from_json(e[0], where), double_from_json(e[1], where));
        }
    }
    return m;
}

Alphabet alphabet_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("alphabet: expected an array of symbol strings");
    Alphabet a;
    for (const json& s : j) {
        if (!s.is_string()) throw parse_error("alphabet: symbols must be strings");
        a.symbols.push_back(s.get<std::string>());
    }
    for (std::size_t i = 0; i < a.symbols.size(); ++i)
        for (std::size_t k = i + 1; k < a.symbols.size(); ++k)
            if (a.symbols[i] == a.symbols[k]) throw parse_error("alphabet: duplicate symbol '" + a.symbols[i] + "'");
    return a;
}

const json& need(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw parse_error(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
json gfa_payload(const Gfa<T>& g) {
    json trans = json::object();
    for (std::size_t s = 0; s < g.alphabet.size(); ++s)
        trans[g.alphabet.symbols[s]] = matrix_to_json(g.transition[s]);
    return json{{"initial", vec_to_json(g.initial)},
                {"transition", std::move(trans)},
                {"final", vec_to_json(g.final_weights)}};
}

template <typename T>
Gfa<T> gfa_from_payload(const json& payload, Alphabet alphabet, T cutpoint) {
    Gfa<T> g;
    g.alphabet = std::move(alphabet);
    g.cutpoint = std::move(cutpoint);
    g.initial = vec_from_json<T>(need(payload, "initial"), "initial");
    g.final_weights = vec_from_json<T>(need(payload, "final"), "final");
    const json& trans = need(payload, "transition");
    for (const std::string& sym : g.alphabet.symbols) {
        if (!trans.contains(sym)) throw parse_error("transition: missing matrix for symbol '" + sym + "'");
        g.transition.push_back(matrix_from_json<T>(trans[sym], "transition['" + sym + "']"));
    }
    return g;
}

template <typename T>
json pfa_payload(const Pfa<T>& p) {
    json trans = json::object();
    for (std::size_t s = 0; s < p.alphabet.size(); ++s)
        trans[p.alphabet.symbols[s]] = matrix_to_json(p.transition[s]);
    return json{{"initial", vec_to_json(p.initial)},
                {"transition", std::move(trans)},
                {"end_marker", matrix_to_json(p.end_marker)},
                {"accepting", p.accepting}};
}

template <typename T>
Pfa<T> pfa_from_payload(const json& payload, Alphabet alphabet, T cutpoint) {
    Pfa<T> p;
    p.alphabet = std::move(alphabet);
    p.cutpoint = std::move(cutpoint);
    p.initial = vec_from_json<T>(need(payload, "initial"), "initial");
    const json& trans = need(payload, "transition");
    for (const std::string& sym : p.alphabet.symbols) {
        if (!trans.contains(sym)) throw parse_error("transition: missing matrix for symbol '" + sym + "'");
        p.transition.push_back(matrix_from_json<T>(trans[sym], "transition['" + sym + "']"));
    }
    p.end_marker = matrix_from_json<T>(need(payload, "end_marker"), "end_marker");
    const json& acc = need(payload, "accepting");
    if (!acc.is_array()) throw parse_error("accepting: expected an array of state indices");
    for (const json& s : acc) {
        if (!s.is_number_integer() || s.get<long long>() < 0)
            throw parse_error("accepting: state indices must be nonnegative integers");
        p.accepting.push_back(s.get<std::size_t>());
    }
    std::sort(p.accepting.begin(), p.accepting.end());
    return p;
}

json channel_to_json(const Channel& e) {
    json out = json::object();
    json main_list = json::array();
    for (const CMatrix& k : e.kraus) main_list.push_back(cmatrix_to_json(k));
    out["kraus"] = std::move(main_list);
    if (!e.kraus_extra.empty()) {
        json extra = json::array();
        for (const CMatrix& k : e.kraus_extra) extra.push_back(cmatrix_to_json(k));
        out["kraus_extra"] = std::move(extra);
    }
    return out;
}

Channel channel_from_json(const json& j, const std::string& where) {
    Channel e;
    const json& main_list = need(j, "kraus");
    if (!main_list.is_array()) throw parse_error(where + ": 'kraus' must be an array of matrices");
    for (const json& k : main_list) e.kraus.push_back(cmatrix_from_json(k, where));
    if (j.contains("kraus_extra"))
        for (const json& k : j["kraus_extra"]) e.kraus_extra.push_back(cmatrix_from_json(k, where));
    if (e.kraus.empty() && e.kraus_extra.empty()) throw parse_error(where + ": empty Kraus list");
    e.dim = e.kraus.empty() ? e.kraus_extra[0].rows() : e.kraus[0].rows();
    return e;
}

json gqfa_payload(const Gqfa& q) {
    json channels = json::object();
    for (std::size_t s = 0; s < q.alphabet.size(); ++s)
        channels[q.alphabet.symbols[s]] = channel_to_json(q.channel[s]);
    return json{{"initial_state", cmatrix_to_json(q.initial_state)},
                {"channels", std::move(channels)},
                {"accept_projector", cmatrix_to_json(q.accept_projector)}};
}

Gqfa gqfa_from_payload(const json& payload, Alphabet alphabet, double cutpoint) {
    Gqfa q;
    q.alphabet = std::move(alphabet);
    q.cutpoint = cutpoint;
    q.initial_state = cmatrix_from_json(need(payload, "initial_state"), "initial_state");
    const json& channels = need(payload, "channels");
    for (const std::string& sym : q.alphabet.symbols) {
        if (!channels.contains(sym)) throw parse_error("channels: missing channel for symbol '" + sym + "'");
        q.channel.push_back(channel_from_json(channels[sym], "channels['" + sym + "']"));
    }
    q.accept_projector = cmatrix_from_json(need(payload, "accept_projector"), "accept_projector");
    return q;
}

}  // namespace

json machine_to_json(const Machine& m) {
    json doc;
    doc["kind"] = machine_kind(m);
    std::visit(
        [&](const auto& x) {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, Gfa<Rational>>) {
                doc["scalar_mode"] = "rational";
                doc["cutpoint"] = rational_to_json(x.cutpoint);
                doc["payload"] = gfa_payload(x);
            } else if constexpr (std::is_same_v<M, Gfa<double>>) {
                doc["scalar_mode"] = "float64";
                doc["cutpoint"] = x.cutpoint;
                doc["payload"] = gfa_payload(x);
            } else if constexpr (std::is_same_v<M, Pfa<Rational>>) {
                doc["scalar_mode"] = "rational";
                doc["cutpoint"] = rational_to_json(x.cutpoint);
                doc["payload"] = pfa_payload(x);
            } else if constexpr (std::is_same_v<M, Pfa<double>>) {
                doc["scalar_mode"] = "float64";
                doc["cutpoint"] = x.cutpoint;
                doc["payload"] = pfa_payload(x);
            } else {
                doc["scalar_mode"] = "float64";
                doc["cutpoint"] = x.cutpoint;
                doc["payload"] = gqfa_payload(x);
            }
            doc["alphabet"] = x.alphabet.symbols;
        },
        m);
    return doc;
}

Machine machine_from_json(const json& doc) {
    if (!doc.is_object()) throw parse_error("machine document must be a JSON object");
    const std::string kind = need(doc, "kind").get<std::string>();
    const std::string mode = need(doc, "scalar_mode").get<std::string>();
    Alphabet alphabet = alphabet_from_json(need(doc, "alphabet"));
    const json& payload = need(doc, "payload");
    const json& cut = need(doc, "cutpoint");

    Machine m;
    if (kind == "gfa") {
        if (mode == "rational")
            m = gfa_from_payload<Rational>(payload, std::move(alphabet), rational_from_json(cut, "cutpoint"));
        else if (mode == "float64")
            m = gfa_from_payload<double>(payload, std::move(alphabet), double_from_json(cut, "cutpoint"));
        else
            throw parse_error("unknown scalar_mode '" + mode + "'");
    } else if (kind == "pfa") {
        if (mode == "rational")
            m = pfa_from_payload<Rational>(payload, std::move(alphabet), rational_from_json(cut, "cutpoint"));
        else if (mode == "float64")
            m = pfa_from_payload<double>(payload, std::move(alphabet), double_from_json(cut, "cutpoint"));
        else
            throw parse_error("unknown scalar_mode '" + mode + "'");
    } else if (kind == "gqfa") {
        if (mode != "float64") throw parse_error("gqfa machines are float64 only");
        m = gqfa_from_payload(payload, std::move(alphabet), double_from_json(cut, "cutpoint"));
    } else {
        throw parse_error("unknown machine kind '" + kind + "'");
    }

    ValidationReport rep = validate(m);
    if (!rep.ok()) throw validation_error("machine fails validation\n" + rep.summary());
    return m;
}

Machine load_machine(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw parse_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return machine_from_json(doc);
}

void save_machine(const Machine& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path.string() + "'");
    out << machine_to_json(m).dump(2) << "\n";
}

json trace_to_json(const ConversionTrace& trace, const Alphabet& alphabet) {
    json doc;
    doc["degenerate"] = trace.degenerate;
    if (trace.degenerate) {
        doc["degenerate_reason"] = trace.degenerate_reason;
        return doc;
    }
    doc["shifted"] = machine_to_json(Machine(trace.shifted));
    doc["split_initial"] = vec_to_json(trace.split_initial);
    json split_trans = json::object();
    json balanced = json::object();
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        split_trans[alphabet.symbols[s]] = matrix_to_json(trace.split_transition[s]);
        balanced[alphabet.symbols[s]] = matrix_to_json(trace.balanced[s]);
    }
    doc["split_transition"] = std::move(split_trans);
    doc["split_final"] = vec_to_json(trace.split_final);
    doc["balanced"] = std::move(balanced);
    doc["scale"] = rational_to_json(trace.scale);
    doc["padded_dim"] = trace.padded_dim;
    doc["initial_mass"] = rational_to_json(trace.initial_mass);
    doc["decision"] = vec_to_json(trace.decision);
    doc["decision_bound"] = rational_to_json(trace.decision_bound);
    doc["accept_prob"] = vec_to_json(trace.accept_prob);
    return doc;
}

json report_to_json(const AgreementReport& report, const Alphabet& alphabet) {
    json doc;
    doc["words_checked"] = report.words_checked;
    doc["agreed"] = report.agreed();
    json dis = json::array();
    for (const auto& d : report.disagreements)
        dis.push_back({{"word", format_word(alphabet, d.word)}, {"value_a", d.value_a}, {"value_b", d.value_b}});
    doc["disagreements"] = std::move(dis);
    json flags = json::array();
    for (const auto& f : report.boundary_flags)
        flags.push_back({{"word", format_word(alphabet, f.word)},
                         {"machine", std::string(1, f.machine)},
                         {"value", f.value},
                         {"distance", f.distance}});
    doc["boundary_flags"] = std::move(flags);
    return doc;
}

json report_to_json(const ShatterReport& report) {
    json doc;
    doc["checks"] = report.checks;
    doc["passed"] = report.checks - report.failures.size();
    doc["min_margin"] = report.min_margin;
    json fails = json::array();
    for (const auto& f : report.failures)
        fails.push_back({{"prepare", f.prepare_index},
                         {"subset_mask", f.subset_mask},
                         {"value", f.value},
                         {"expected_accept", f.expected_accept},
                         {"boundary", f.outcome == Outcome::boundary}});
    doc["failures"] = std::move(fails);
    return doc;
}

json report_to_json(const ShatterInstance& inst) {
    json doc;
    doc["threshold"] = to_string(inst.threshold);
    doc["point_count"] = inst.points.size();
    doc["shattered"] = inst.shattered;
    json results = json::array();
    for (const auto& r : inst.results) {
        json item{{"subset_mask", r.mask}, {"feasible", r.feasible}};
        if (r.feasible) {
            item["slack"] = to_string(r.slack);
            json w = json::array();
            for (const Rational& x : r.witness) w.push_back(to_string(x));
            item["witness"] = std::move(w);
        }
        results.push_back(std::move(item));
    }
    doc["subsets"] = std::move(results);
    return doc;
}

}  // namespace cutpoint
