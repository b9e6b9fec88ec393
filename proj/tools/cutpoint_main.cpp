// Command-line front end: evaluate machines, run the conversion pipeline,
// build witness machines, and verify agreement/shattering claims.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include "cutpoint/convert.hpp"
#include "cutpoint/linearize.hpp"
#include "cutpoint/serialize.hpp"
#include "cutpoint/verify.hpp"
#include "cutpoint/witness.hpp"

using namespace cutpoint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct EvalOptions {
    std::string machine_path;
    std::vector<std::string> words;
    double tol = k_boundary_tol;
    bool as_json = false;
};

int run_eval(const EvalOptions& opt) {
    Machine m = load_machine(opt.machine_path);
    const Alphabet& alphabet = machine_alphabet(m);

    json out = json::array();
    for (const std::string& text : opt.words) {
        Word w = parse_word(alphabet, text);
        Decision d = machine_decide(m, w, opt.tol);
        std::optional<Rational> exact = machine_value_exact(m, w);
        const char* verdict = d.outcome == Outcome::accept   ? "accept"
                              : d.outcome == Outcome::reject ? "reject"
                                                             : "boundary";
        if (opt.as_json) {
            json item{{"word", format_word(alphabet, w)},
                      {"value", d.value},
                      {"cutpoint", d.cutpoint},
                      {"decision", verdict}};
            if (exact) item["value_exact"] = to_string(*exact);
            out.push_back(std::move(item));
        } else {
            std::cout << format_word(alphabet, w) << "  f = " << std::setprecision(17) << d.value;
            if (exact) std::cout << " (" << to_string(*exact) << ")";
            std::cout << "  " << verdict << "\n";
        }
    }
    if (opt.as_json) std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct ConvertOptions {
    std::string direction;
    std::string input_path;
    std::string output_path;
    std::string trace_path;
    std::string scale_margin = "1";
};

int run_convert(const ConvertOptions& opt) {
    Machine in = load_machine(opt.input_path);
    Rational margin = parse_rational(opt.scale_margin);

    if (opt.direction == "qfa-to-gfa") {
        const Gqfa* q = std::get_if<Gqfa>(&in);
        if (!q) throw parse_error("qfa-to-gfa expects a gqfa machine document");
        Gfa<double> g = qfa_to_gfa(*q);
        save_machine(Machine(std::move(g)), opt.output_path);
        std::cout << "wrote " << opt.output_path << "\n";
        return kExitOk;
    }

    GfaToPfaResult result;
    if (opt.direction == "gfa-to-pfa") {
        if (const auto* gr = std::get_if<Gfa<Rational>>(&in))
            result = gfa_to_pfa(*gr, margin);
        else if (const auto* gd = std::get_if<Gfa<double>>(&in))
            result = gfa_to_pfa(promote_exact(*gd), margin);
        else
            throw parse_error("gfa-to-pfa expects a gfa machine document");
    } else {  // qfa-to-pfa
        const Gqfa* q = std::get_if<Gqfa>(&in);
        if (!q) throw parse_error("qfa-to-pfa expects a gqfa machine document");
        result = qfa_to_pfa(*q, margin);
    }

    const Alphabet& alphabet = result.pfa.alphabet;
    save_machine(Machine(result.pfa), opt.output_path);
    std::cout << "wrote " << opt.output_path << " (" << result.pfa.states() << " states, cutpoint 1/2)\n";
    if (result.trace.degenerate)
        std::cout << "degenerate input: " << result.trace.degenerate_reason << "\n";
    if (!opt.trace_path.empty()) {
        std::ofstream out(opt.trace_path);
        if (!out) throw error("cannot write '" + opt.trace_path + "'");
        out << trace_to_json(result.trace, alphabet).dump(2) << "\n";
        std::cout << "trace: " << opt.trace_path << "\n";
    }
    return kExitOk;
}

struct WitnessOptions {
    std::size_t n = 2;
    std::string output_path;
    std::vector<std::string> tests;
    bool all_tests = false;
    bool exact_bound = false;
};

int run_witness_build(const WitnessOptions& opt) {
    WitnessParams params = witness_params(opt.n, opt.exact_bound);
    std::vector<SignVector> tests;
    if (opt.all_tests) {
        if (params.directions > 12)
            throw parse_error("--all-tests materializes 2^(n^2-1) symbols; refusing beyond n^2-1 = 12");
        for (std::uint64_t mask : all_subset_masks(params.directions))
            tests.push_back(subset_signs(mask, params.directions));
    }
    for (const std::string& t : opt.tests) {
        std::string name = t.starts_with("tau:") ? t : "tau:" + t;
        auto signs = parse_test_symbol(name);
        if (!signs || signs->size() != params.directions)
            throw parse_error("bad test sign vector '" + t + "' (need " + std::to_string(params.directions) +
                              " signs of +/-)");
        tests.push_back(*signs);
    }
    Gqfa q = build_witness(params, tests);
    save_machine(Machine(q), opt.output_path);
    std::cout << "wrote " << opt.output_path << " (dimension " << params.dim << ", "
              << params.directions << " prepare symbols, " << tests.size() << " test symbols)\n"
              << "epsilon = " << params.epsilon << ", strength = " << params.strength
              << ", margin = " << params.epsilon * params.strength << "\n";
    return kExitOk;
}

struct AgreementOptions {
    std::string path_a;
    std::string path_b;
    std::size_t max_len = 4;
    double tol = k_boundary_tol;
    bool as_json = false;
};

int run_verify_agreement(const AgreementOptions& opt) {
    Machine a = load_machine(opt.path_a);
    Machine b = load_machine(opt.path_b);
    AgreementReport report = check_agreement(a, b, opt.max_len, opt.tol);
    const Alphabet& alphabet = machine_alphabet(a);

    if (opt.as_json) {
        std::cout << report_to_json(report, alphabet).dump(2) << "\n";
    } else {
        std::cout << "words checked: " << report.words_checked << "\n"
                  << "disagreements: " << report.disagreements.size() << "\n"
                  << "boundary flags: " << report.boundary_flags.size() << "\n";
        for (const auto& d : report.disagreements)
            std::cout << "  " << format_word(alphabet, d.word) << "  f_a = " << d.value_a
                      << "  f_b = " << d.value_b << "\n";
        for (const auto& f : report.boundary_flags)
            std::cout << "  boundary(" << f.machine << ") " << format_word(alphabet, f.word)
                      << "  f = " << f.value << " (distance " << f.distance << ")\n";
    }
    return report.clean() ? kExitOk : kExitVerificationFailure;
}

struct ShatteringOptions {
    std::size_t n = 2;
    bool all_subsets = false;
    std::size_t random_subsets = 100;
    bool random_subsets_given = false;
    std::uint64_t seed = 20240811;
    bool exact_bound = false;
    bool as_json = false;
};

int run_verify_shattering(const ShatteringOptions& opt) {
    WitnessParams params = witness_params(opt.n, opt.exact_bound);
    std::vector<std::uint64_t> masks;
    if (opt.all_subsets || (!opt.random_subsets_given && params.directions <= 8)) {
        if (params.directions > 12)
            throw parse_error("full subset enumeration is infeasible for n^2-1 = " +
                              std::to_string(params.directions) + " directions");
        masks = all_subset_masks(params.directions);
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << params.directions) - 1);
        for (std::size_t i = 0; i < opt.random_subsets; ++i) masks.push_back(dist(rng));
    }

    ShatterReport report = verify_shattering(params, masks);
    if (opt.as_json) {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << (report.checks - report.failures.size()) << "/" << report.checks
                  << " checks passed (margin " << report.min_margin << ")\n";
        for (const auto& f : report.failures)
            std::cout << "  FAIL prepare " << f.prepare_index << " subset mask " << f.subset_mask
                      << " value " << f.value << "\n";
    }
    return report.ok() ? kExitOk : kExitVerificationFailure;
}

struct BoundsOptions {
    std::size_t n_from = 2;
    std::size_t n_to = 6;
    bool as_json = false;
};

int run_report_bounds(const BoundsOptions& opt) {
    if (opt.n_from < 2 || opt.n_to < opt.n_from) throw parse_error("need 2 <= n-from <= n-to");
    json rows = json::array();
    if (!opt.as_json) {
        std::cout << std::setw(4) << "n" << std::setw(24) << "pfa states (upper)" << std::setw(24)
                  << "pfa states (lower)" << "\n";
    }
    for (std::size_t n = opt.n_from; n <= opt.n_to; ++n) {
        std::size_t upper = 2 * n * n + 6;  // conversion pipeline output size
        std::size_t lower = n * n - 1;      // witness family requirement
        if (opt.as_json)
            rows.push_back({{"n", n}, {"upper", upper}, {"lower", lower}});
        else
            std::cout << std::setw(4) << n << std::setw(24) << upper << std::setw(24) << lower << "\n";
    }
    if (opt.as_json) std::cout << rows.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulate, convert, and verify cutpoint automata (gfa / pfa / gqfa)"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a machine on words");
    eval_cmd->add_option("machine", eval_opt.machine_path, "machine JSON file")->required();
    eval_cmd->add_option("words", eval_opt.words, "words; symbols joined by '.', 'eps' for the empty word")
        ->required();
    eval_cmd->add_option("--tol", eval_opt.tol, "float boundary band around the cutpoint");
    eval_cmd->add_flag("--json", eval_opt.as_json, "emit JSON instead of a table");

    ConvertOptions conv_opt;
    auto* convert_cmd = app.add_subcommand("convert", "convert between machine models");
    convert_cmd
        ->add_option("direction", conv_opt.direction, "one of gfa-to-pfa, qfa-to-gfa, qfa-to-pfa")
        ->required()
        ->check(CLI::IsMember({"gfa-to-pfa", "qfa-to-gfa", "qfa-to-pfa"}));
    convert_cmd->add_option("input", conv_opt.input_path, "input machine JSON")->required();
    convert_cmd->add_option("output", conv_opt.output_path, "output machine JSON")->required();
    convert_cmd->add_option("--trace", conv_opt.trace_path, "write the conversion trace JSON here");
    convert_cmd->add_option("--scale-margin", conv_opt.scale_margin,
                            "rational margin added to the max entry when choosing the scale constant");

    auto* witness_cmd = app.add_subcommand("witness", "witness family tools");
    witness_cmd->require_subcommand(1);
    WitnessOptions wit_opt;
    auto* witness_build = witness_cmd->add_subcommand("build", "build the prepare-test witness machine");
    witness_build->add_option("-n,--dimension", wit_opt.n, "Hilbert dimension (>= 2)")->required();
    witness_build->add_option("-o,--output", wit_opt.output_path, "output machine JSON")->required();
    witness_build->add_option("--tests", wit_opt.tests,
                              "test sign vectors to materialize, e.g. +--,-+- (delimited)")
        ->delimiter(',');
    witness_build->add_flag("--all-tests", wit_opt.all_tests, "materialize every test symbol (small n only)");
    witness_build->add_flag("--exact-bound", wit_opt.exact_bound,
                            "use the exhaustive sign-vector norm bound instead of the triangle bound");

    auto* verify_cmd = app.add_subcommand("verify", "brute-force verification");
    verify_cmd->require_subcommand(1);
    AgreementOptions agr_opt;
    auto* verify_agreement = verify_cmd->add_subcommand("agreement", "compare two machines word by word");
    verify_agreement->add_option("machine_a", agr_opt.path_a, "first machine JSON")->required();
    verify_agreement->add_option("machine_b", agr_opt.path_b, "second machine JSON")->required();
    verify_agreement->add_option("--max-len", agr_opt.max_len, "maximum word length")->required();
    verify_agreement->add_option("--tol", agr_opt.tol, "float boundary band");
    verify_agreement->add_flag("--json", agr_opt.as_json, "emit JSON instead of a table");

    ShatteringOptions sh_opt;
    auto* verify_shatter = verify_cmd->add_subcommand("shattering", "check the witness shattering law");
    verify_shatter->add_option("-n,--dimension", sh_opt.n, "Hilbert dimension (>= 2)")->required();
    verify_shatter->add_flag("--all-subsets", sh_opt.all_subsets, "enumerate every subset (small n only)");
    auto* subsets_opt =
        verify_shatter->add_option("--subsets", sh_opt.random_subsets, "random subset count when not enumerating");
    verify_shatter->add_option("--seed", sh_opt.seed, "random seed for subset sampling");
    verify_shatter->add_flag("--exact-bound", sh_opt.exact_bound, "use the exhaustive norm bound");
    verify_shatter->add_flag("--json", sh_opt.as_json, "emit JSON instead of a table");

    auto* report_cmd = app.add_subcommand("report", "closed-form summaries");
    report_cmd->require_subcommand(1);
    BoundsOptions bounds_opt;
    auto* report_bounds = report_cmd->add_subcommand("bounds", "per-n conversion size table");
    report_bounds->add_option("--n-from", bounds_opt.n_from, "first dimension");
    report_bounds->add_option("--n-to", bounds_opt.n_to, "last dimension");
    report_bounds->add_flag("--json", bounds_opt.as_json, "emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }
    sh_opt.random_subsets_given = subsets_opt->count() > 0;

    try {
        if (*eval_cmd) return run_eval(eval_opt);
        if (*convert_cmd) return run_convert(conv_opt);
        if (*witness_build) return run_witness_build(wit_opt);
        if (*verify_agreement) return run_verify_agreement(agr_opt);
        if (*verify_shatter) return run_verify_shattering(sh_opt);
        if (*report_bounds) return run_report_bounds(bounds_opt);
        std::cerr << "missing subcommand\n";
        return kExitInputError;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const validation_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const boundary_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
