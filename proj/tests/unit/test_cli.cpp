#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "asp_examples.hpp"
#include "incmeter/process.hpp"
#include "incmeter/solver.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

std::string cli() {
    auto p = env("INCMETER_CLI");
    return p ? *p : std::string("./incmeter");
}

ProcessResult run(std::vector<std::string> args) { return run_process(cli(), args, Deadline::after(60)); }

std::string kb_file(const std::string& name, const KnowledgeBase& k) {
    auto p = fs::temp_directory_path() / ("incmeter_cli_" + name + ".kb");
    std::ofstream(p) << to_string(k);
    return p.string();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("measure prints the value and a JSON block") {
        auto k4f = kb_file("k4", k4());
        auto r = run({"measure", "--measure", "contension", "--method", "sat", "--search", "binary", k4f});
        CHECK(r.exit_code == 0);
        CHECK(first_line(r.output) == "1");
        CHECK(r.output.find("\"solver_calls\"") != std::string::npos);
        CHECK(r.output.find("\"phase_seconds\"") != std::string::npos);

        auto k6f = kb_file("k6", k6());
        auto inf = run({"measure", "--measure", "hitting-set", "--method", "naive", k6f});
        CHECK(inf.exit_code == 0);
        CHECK(first_line(inf.output) == "inf");

        for (std::string method : {"maxsat", "naive"}) {
            auto out = run({"measure", "-m", "c", "--method", method, k4f});
            CHECK(first_line(out.output) == "1");
        }
        auto lin = run({"measure", "-m", "dhit", "--search", "linear", k4f});
        CHECK(first_line(lin.output) == "1");
    }

    TEST_CASE("identical flags give identical stdout") {
        auto k7f = kb_file("k7", k7());
        for (std::string m : {"c", "f", "hs", "dmax", "dsum", "dhit"}) {
            auto a = run({"measure", "-m", m, "--no-times", "--seed", "3", k7f});
            auto b = run({"measure", "-m", m, "--no-times", "--seed", "3", k7f});
            CHECK(a.exit_code == 0);
            CHECK(a.output == b.output);
            CHECK(first_line(a.output) == "1");
        }
    }

    TEST_CASE("encode writes DIMACS with the expected verdict") {
        auto k7f = kb_file("k7", k7());
        auto out = (fs::temp_directory_path() / "incmeter_cli_out.cnf").string();
        auto r = run({"encode", "--measure", "hit-distance", "-u", "1", k7f, "-o", out});
        REQUIRE(r.exit_code == 0);
        auto p = parse_dimacs(asp_examples::read_text(out));
        CnfInstance cnf;
        cnf.num_vars = p.num_vars;
        cnf.clauses = p.clauses;
        CHECK(solve_internal(cnf, 0, Deadline::never()).sat());
        auto r0 = run({"encode", "-m", "dhit", "-u", "0", k7f});
        auto p0 = parse_dimacs(r0.output);
        cnf.num_vars = p0.num_vars;
        cnf.clauses = p0.clauses;
        CHECK_FALSE(solve_internal(cnf, 0, Deadline::never()).sat());
        auto w = run({"encode", "-m", "contension", "--format", "wcnf", k7f});
        CHECK(w.exit_code == 0);
        CHECK(w.output.rfind("p wcnf ", 0) == 0);
    }

    TEST_CASE("emit-asp and generate") {
        auto k7f = kb_file("k7", k7());
        auto r = run({"emit-asp", "-m", "forgetting", k7f});
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("formulaIsAtomOcc(f_2_n,a_x,3).") != std::string::npos);

        auto dir = fs::temp_directory_path() / "incmeter_cli_corpus";
        fs::remove_all(dir);
        auto g = run({"generate", "--atoms", "3", "--count", "4", "--seed", "9", "-o", dir.string()});
        CHECK(g.exit_code == 0);
        CHECK(fs::exists(dir / "kb_0003.kb"));
        CHECK(fs::exists(dir / "manifest.json"));

        auto out = fs::temp_directory_path() / "incmeter_cli_bench";
        fs::remove_all(out);
        auto b = run({"bench", "--measures", "c,dhit", "--methods", "sat-binary,naive", "--workers", "2", "-o",
                      out.string(), dir.string()});
        CHECK(b.exit_code == 0);
        CHECK(fs::exists(out / "summary.csv"));
        CHECK(fs::exists(out / "scatter_contension_sat-binary_vs_naive.csv"));
        fs::remove_all(dir);
        fs::remove_all(out);
    }

    TEST_CASE("exit codes") {
        auto k4f = kb_file("k4", k4());
        CHECK(run({"measure", "-m", "nonsense", k4f}).exit_code == 1);
        CHECK(run({"measure", "-m", "f", "--method", "maxsat", k4f}).exit_code == 1);
        CHECK(run({"measure", "-m", "c", "/nonexistent.kb"}).exit_code == 1);
        CHECK(run({"bogus"}).exit_code == 1);
        CHECK(run({"measure", "-m", "c", "--sat-solver", "/nonexistent/solver", k4f}).exit_code == 2);
        auto bad = kb_file("bad", k4());
        std::ofstream(bad) << "x &&\n";
        CHECK(run({"measure", "-m", "c", bad}).exit_code == 1);
    }
}
