#include <doctest.h>

#include <algorithm>

#include "incmeter/error.hpp"
#include "incmeter/solver.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;

namespace {

CnfInstance random_cnf(std::mt19937_64& rng, int n, int m, int width) {
    CnfInstance cnf;
    cnf.num_vars = n;
    for (int i = 0; i < m; ++i) {
        Clause c;
        int w = 1 + static_cast<int>(rng() % width);
        for (int j = 0; j < w; ++j) {
            int v = 1 + static_cast<int>(rng() % n);
            c.push_back((rng() & 1) ? v : -v);
        }
        if (normalize_clause(c)) cnf.clauses.push_back(c);
    }
    return cnf;
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("dimacs emission format") {
        CnfInstance cnf;
        cnf.num_vars = 2;
        cnf.clauses = {{1, -2}};
        CHECK(emit_dimacs(cnf) == "p cnf 2 1\n1 -2 0\n");
    }

    TEST_CASE("dimacs round trip preserves the clause multiset") {
        std::mt19937_64 rng(3);
        for (int n = 0; n < 100; ++n) {
            auto cnf = random_cnf(rng, 1 + n % 10, n % 30, 4);
            auto back = parse_dimacs(emit_dimacs(cnf));
            CHECK(back.num_vars == cnf.num_vars);
            auto a = cnf.clauses, b = back.clauses;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
        }
        CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), Error);
    }

    TEST_CASE("solver output parsing") {
        CHECK(parse_solver_output("s UNSATISFIABLE\n", 3).status == SolverResult::Status::Unsat);
        auto r = parse_solver_output("c hi\ns SATISFIABLE\nv -1 2\nv 3 0\n", 3);
        REQUIRE(r.sat());
        CHECK_FALSE(r.model[1]);
        CHECK(r.model[2]);
        CHECK(r.model[3]);
        CHECK_THROWS_AS(parse_solver_output("garbage\n", 1), BackendError);
    }

    TEST_CASE("internal solver agrees with truth tables up to 16 variables") {
        std::mt19937_64 rng(17);
        for (int n = 0; n < 400; ++n) {
            int vars = 1 + n % 16;
            auto cnf = random_cnf(rng, vars, static_cast<int>(vars * 4.3), 3);
            auto r = solve_internal(cnf, n, Deadline::never());
            REQUIRE(r.status != SolverResult::Status::Timeout);
            CHECK(r.sat() == brute_force_sat(vars, cnf.clauses));
            if (r.sat()) {
                CHECK(r.model.size() == static_cast<std::size_t>(vars + 1));
                CHECK(satisfies(r.model, cnf.clauses));
            }
        }
    }

    TEST_CASE("empty clause and empty instance") {
        CnfInstance empty;
        CHECK(solve_internal(empty, 0, Deadline::never()).sat());
        CnfInstance bad;
        bad.num_vars = 1;
        bad.clauses = {{}};
        CHECK_FALSE(solve_internal(bad, 0, Deadline::never()).sat());
    }

    TEST_CASE("same seed gives the same model") {
        std::mt19937_64 rng(23);
        auto cnf = random_cnf(rng, 30, 90, 3);
        auto a = solve_internal(cnf, 5, Deadline::never());
        auto b = solve_internal(cnf, 5, Deadline::never());
        CHECK(a.status == b.status);
        CHECK(a.model == b.model);
    }

    TEST_CASE("expired deadline reports a timeout") {
        // Pigeonhole 9 into 8 is hard enough to outlast a zero deadline.
        CnfInstance cnf;
        const int p = 9, h = 8;
        cnf.num_vars = p * h;
        auto v = [&](int i, int j) { return i * h + j + 1; };
        for (int i = 0; i < p; ++i) {
            Clause c;
            for (int j = 0; j < h; ++j) c.push_back(v(i, j));
            cnf.clauses.push_back(c);
        }
        for (int j = 0; j < h; ++j)
            for (int a = 0; a < p; ++a)
                for (int b = a + 1; b < p; ++b) cnf.clauses.push_back({-v(a, j), -v(b, j)});
        auto r = solve_internal(cnf, 0, Deadline::after(0));
        CHECK(r.status == SolverResult::Status::Timeout);
    }

    TEST_CASE("maxsat") {
        // Hard: a || b. Soft: !a, !b.
        MaxSatInstance inst;
        inst.hard.vars.get_or_create(VarName::plain("a"));
        inst.hard.vars.get_or_create(VarName::plain("b"));
        inst.hard.num_vars = 2;
        inst.hard.clauses = {{1, 2}};
        inst.soft = {-1, -2};
        auto r = solve_maxsat(inst, {});
        CHECK(r.status == MaxSatResult::Status::Optimal);
        CHECK(r.cost == 1);
        CHECK(emit_wcnf(inst) == "p wcnf 2 3 3\n3 1 2 0\n1 -1 0\n1 -2 0\n");
        inst.hard.clauses.push_back({-1});
        inst.hard.clauses.push_back({-2});
        CHECK(solve_maxsat(inst, {}).status == MaxSatResult::Status::HardUnsat);
    }

    TEST_CASE("external backend agrees with the internal one") {
        auto path = env("INCMETER_EXTERNAL_SAT");
        if (!path) {
            MESSAGE("external SAT backend not configured; skipped");
            return;
        }
        BackendConfig cfg;
        cfg.kind = BackendConfig::Kind::External;
        cfg.path = *path;
        std::mt19937_64 rng(29);
        for (int n = 0; n < 20; ++n) {
            auto cnf = random_cnf(rng, 12, 50, 3);
            auto ext = solve(cnf, cfg);
            auto in = solve_internal(cnf, 0, Deadline::never());
            CHECK(ext.sat() == in.sat());
            if (ext.sat()) CHECK(satisfies(ext.model, cnf.clauses));
        }
    }

    TEST_CASE("missing external solver is a backend error") {
        BackendConfig cfg;
        cfg.kind = BackendConfig::Kind::External;
        cfg.path = "/nonexistent/solver";
        CnfInstance cnf;
        cnf.num_vars = 1;
        cnf.clauses = {{1}};
        CHECK_THROWS_AS(solve(cnf, cfg), BackendError);
    }
}
