// incmeter: inconsistency measurement from the command line.
//
// Exit codes: 0 ok, 1 usage or input error, 2 backend failure, 3 timeout,
// 4 methods disagree (bench).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "incmeter/asp.hpp"
#include "incmeter/bench.hpp"
#include "incmeter/encodings.hpp"
#include "incmeter/error.hpp"
#include "incmeter/search.hpp"

namespace fs = std::filesystem;
using namespace incmeter;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitBackend = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitDisagree = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

KnowledgeBase load_kb(const std::string& path) {
    try {
        return parse_kb(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Measure measure_arg(const std::string& s) {
    auto m = parse_measure(s);
    if (!m) throw UsageError("unknown measure '" + s + "'");
    return *m;
}

CardMethod card_arg(const std::string& s) {
    if (s == "sequential") return CardMethod::Sequential;
    if (s == "binomial") return CardMethod::Binomial;
    throw UsageError("unknown cardinality encoding '" + s + "'");
}

struct BackendFlags {
    std::string sat_solver;
    std::string asp_solver;
    double timeout = 600;
    std::uint64_t seed = 0;
    std::string card = "sequential";

    void add(CLI::App* app) {
        app->add_option("--sat-solver", sat_solver, "External SAT solver (default: INCMETER_SAT_SOLVER or internal)");
        app->add_option("--asp-solver", asp_solver, "ASP solver (default: INCMETER_ASP_SOLVER)");
        app->add_option("--timeout", timeout, "Timeout in seconds")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "Seed for the internal solver");
        app->add_option("--card", card, "Cardinality encoding: sequential or binomial");
    }

    SearchOptions options() const {
        SearchOptions opt;
        opt.sat = BackendConfig::from_env();
        if (!sat_solver.empty()) {
            opt.sat.kind = BackendConfig::Kind::External;
            opt.sat.path = sat_solver;
        }
        opt.sat.timeout = timeout;
        opt.sat.seed = seed;
        opt.asp = AspConfig::from_env();
        if (!asp_solver.empty()) {
            opt.asp = AspConfig{};
            opt.asp->path = asp_solver;
        }
        if (opt.asp) opt.asp->timeout = timeout;
        opt.card = card_arg(card);
        opt.deadline = Deadline::after(timeout);
        return opt;
    }
};

Method method_arg(const std::string& method, const std::string& search) {
    if (method == "sat") {
        if (search == "binary") return Method::SatBinary;
        if (search == "linear") return Method::SatLinear;
        throw UsageError("unknown search '" + search + "'");
    }
    auto m = parse_method(method);
    if (!m) throw UsageError("unknown method '" + method + "'");
    return *m;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inconsistency measurement for propositional knowledge bases"};
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "Compute an inconsistency value");
    std::string m_measure, m_method = "sat", m_search = "binary", m_input;
    bool m_precheck = false, m_no_times = false;
    BackendFlags m_flags;
    measure->add_option("--measure,-m", m_measure, "Measure")->required();
    measure->add_option("--method", m_method, "sat, maxsat, naive or asp");
    measure->add_option("--search", m_search, "binary or linear (method sat)");
    measure->add_flag("--precheck", m_precheck, "Max/sum distance: test members for satisfiability first");
    measure->add_flag("--no-times", m_no_times, "Omit timings from the JSON block");
    measure->add_option("input", m_input, "KB file")->required();
    m_flags.add(measure);

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Write the SAT encoding for a bound");
    std::string e_measure, e_input, e_output, e_format = "cnf";
    int e_bound = 0;
    BackendFlags e_flags;
    encode_cmd->add_option("--measure,-m", e_measure, "Measure")->required();
    encode_cmd->add_option("-u,--bound", e_bound, "Bound u (hitting set: number of blocks)");
    encode_cmd->add_option("--format", e_format, "cnf, or wcnf for the contension MaxSAT instance");
    encode_cmd->add_option("-o,--output", e_output, "Output file (default stdout)");
    encode_cmd->add_option("--card", e_flags.card, "Cardinality encoding: sequential or binomial");
    encode_cmd->add_option("input", e_input, "KB file")->required();

    // emit-asp
    auto* asp_cmd = app.add_subcommand("emit-asp", "Write the answer-set program");
    std::string a_measure, a_input, a_output;
    asp_cmd->add_option("--measure,-m", a_measure, "Measure")->required();
    asp_cmd->add_option("-o,--output", a_output, "Output file (default stdout)");
    asp_cmd->add_option("input", a_input, "KB file")->required();

    // generate
    auto* gen = app.add_subcommand("generate", "Write a random SRS corpus");
    SrsParams g_params;
    int g_count = 10;
    std::string g_output;
    gen->add_option("--atoms", g_params.signature_size, "Signature size");
    gen->add_option("--min-formulas", g_params.formulas_lo, "Minimum formulas per KB");
    gen->add_option("--max-formulas", g_params.formulas_hi, "Maximum formulas per KB");
    gen->add_option("--pd", g_params.pd, "Disjunction probability");
    gen->add_option("--pc", g_params.pc, "Conjunction probability");
    gen->add_option("--pn", g_params.pn, "Negation probability");
    gen->add_option("--discount", g_params.discount, "Per-level discount");
    gen->add_option("--seed", g_params.seed, "Master seed");
    gen->add_option("--count", g_count, "Number of KBs")->check(CLI::NonNegativeNumber);
    gen->add_option("-o,--output", g_output, "Output directory")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run the measure/method matrix");
    std::vector<std::string> b_inputs;
    std::string b_measures = "contension,forgetting,hitting-set,max-distance,sum-distance,hit-distance";
    std::string b_methods = "sat-binary,naive";
    std::string b_output = "bench_out";
    int b_workers = 1;
    BackendFlags b_flags;
    bench->add_option("--measures", b_measures, "Comma-separated measures");
    bench->add_option("--methods", b_methods, "Comma-separated methods");
    bench->add_option("--workers", b_workers, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_option("-o,--output", b_output, "Report directory");
    bench->add_option("inputs", b_inputs, "KB files or directories")->required();
    b_flags.add(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*measure) {
            auto m = measure_arg(m_measure);
            auto method = method_arg(m_method, m_search);
            auto kb = load_kb(m_input);
            auto opt = m_flags.options();
            opt.precheck_formulas = m_precheck;
            auto out = compute(m, kb, method, opt);
            nlohmann::ordered_json j;
            j["measure"] = measure_name(m);
            j["method"] = method_name(method);
            j["value"] = out.value ? out.value->str() : "timeout";
            j["solver_calls"] = out.solver_calls;
            j["timed_out"] = out.timed_out;
            if (!m_no_times)
                j["phase_seconds"] = {{"encoding", out.times.encoding},
                                      {"cnf_transform", out.times.cnf},
                                      {"solving", out.times.solving},
                                      {"other", out.times.other},
                                      {"total", out.times.total}};
            std::cout << (out.value ? out.value->str() : "timeout") << "\n" << j.dump(2) << "\n";
            return out.timed_out ? kExitTimeout : 0;
        }
        if (*encode_cmd) {
            auto m = measure_arg(e_measure);
            auto kb = load_kb(e_input);
            if (e_format == "wcnf") {
                if (m != Measure::Contension) throw UsageError("wcnf output exists only for contension");
                write_output(e_output, emit_wcnf(encode_contension_maxsat(kb)));
            } else if (e_format == "cnf") {
                if (m == Measure::HittingSet && kb.empty())
                    throw UsageError("hitting-set encoding needs a non-empty KB");
                if (m == Measure::HittingSet && e_bound < 1) throw UsageError("hitting set needs -u >= 1 blocks");
                if (e_bound < 0) throw UsageError("bound must be non-negative");
                auto enc = encode(m, kb, e_bound, card_arg(e_flags.card));
                write_output(e_output, emit_dimacs(enc.cnf));
            } else {
                throw UsageError("unknown format '" + e_format + "'");
            }
            return 0;
        }
        if (*asp_cmd) {
            auto m = measure_arg(a_measure);
            write_output(a_output, emit_asp(m, load_kb(a_input)).text());
            return 0;
        }
        if (*gen) {
            auto paths = write_corpus(g_output, g_params, g_count);
            std::cout << "wrote " << paths.size() << " knowledge bases to " << g_output << "\n";
            return 0;
        }
        if (*bench) {
            std::vector<Measure> measures;
            for (const auto& s : split_list(b_measures)) measures.push_back(measure_arg(s));
            std::vector<Method> methods;
            for (const auto& s : split_list(b_methods)) {
                auto m = parse_method(s);
                if (!m) throw UsageError("unknown method '" + s + "'");
                methods.push_back(*m);
            }
            std::vector<fs::path> files;
            for (const auto& in : b_inputs) {
                if (fs::is_directory(in)) {
                    std::vector<fs::path> found;
                    for (const auto& e : fs::directory_iterator(in))
                        if (e.path().extension() == ".kb") found.push_back(e.path());
                    std::sort(found.begin(), found.end());
                    files.insert(files.end(), found.begin(), found.end());
                } else {
                    files.emplace_back(in);
                }
            }
            std::vector<NamedKb> kbs;
            for (const auto& f : files) kbs.push_back({f.filename().string(), load_kb(f.string())});
            auto opt = b_flags.options();
            auto res = run_matrix(kbs, measures, methods, b_flags.timeout, b_workers, opt);
            emit_reports(res.records, b_output, b_flags.timeout);
            std::cout << res.records.size() << " runs, " << res.disagreements.size() << " disagreements; reports in "
                      << b_output << "\n";
            for (const auto& d : res.disagreements)
                std::cerr << "disagreement: " << d.kb_id << " " << measure_name(d.measure) << ": " << d.detail
                          << "\n";
            return res.disagreements.empty() ? 0 : kExitDisagree;
        }
    } catch (const UsageError& e) {
        std::cerr << "incmeter: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "incmeter: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TimeoutError& e) {
        std::cerr << "incmeter: " << e.what() << "\n";
        return kExitTimeout;
    } catch (const std::exception& e) {
        std::cerr << "incmeter: " << e.what() << "\n";
        return kExitBackend;
    }
    return 0;
}
