#include <doctest.h>

#include <set>

#include "incmeter/solver.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;

TEST_SUITE("cnf") {
    TEST_CASE("normalize_clause") {
        Clause c{3, -1, 3, 2};
        CHECK(normalize_clause(c));
        CHECK(c == Clause{-1, 2, 3});
        Clause t{1, -1};
        CHECK_FALSE(normalize_clause(t));
    }

    TEST_CASE("VarMap is injective both ways") {
        VarMap m;
        int a = m.get_or_create(VarName::tri("x", 't'));
        int b = m.get_or_create(VarName::tri("x", 'f'));
        int c = m.get_or_create(VarName::copy("x", 1));
        int d = m.get_or_create(VarName::occ("x", 1));
        int e = m.fresh_aux();
        CHECK(std::set<int>{a, b, c, d, e}.size() == 5);
        CHECK(m.get_or_create(VarName::tri("x", 't')) == a);
        CHECK(m.find(VarName::inv("x", 1)) == 0);
        CHECK(m.name(c) == VarName::copy("x", 1));
        CHECK(m.count_non_aux() == 4);
        CHECK(m.size() == 5);
    }

    TEST_CASE("builder folds constants and keeps clauses well formed") {
        CnfBuilder b;
        int x = b.var(VarName::plain("x"));
        b.assert_expr(any_of({Expr::var(x), Expr::truth()}));
        CHECK(b.clause_count() == 0);
        b.assert_expr(equiv(Expr::var(x), Expr::falsity()));
        auto cnf = std::move(b).finish();
        REQUIRE(cnf.clauses.size() == 1);
        CHECK(cnf.clauses[0] == Clause{-x});
    }

    TEST_CASE("tseitin examples") {
        auto cnf = tseitin(*parse_formula("x && !x"));
        CHECK_FALSE(brute_force_sat(cnf.num_vars, cnf.clauses));
        auto cnf2 = tseitin(*parse_formula("x <=> !y"));
        CHECK(brute_force_sat(cnf2.num_vars, cnf2.clauses));
        auto cnf3 = tseitin(*parse_formula("-"));
        CHECK_FALSE(brute_force_sat(cnf3.num_vars, cnf3.clauses));
        auto cnf4 = tseitin(*parse_formula("+"));
        CHECK(brute_force_sat(cnf4.num_vars, cnf4.clauses));
    }

    TEST_CASE("tseitin equisatisfiable on random formulas") {
        std::mt19937_64 rng(99);
        for (int n = 0; n < 300; ++n) {
            auto f = random_formula(rng, 1 + n % 6, 5);
            KnowledgeBase k;
            k.formulas.push_back(f);
            auto cnf = tseitin(*f);
            for (const auto& c : cnf.clauses)
                for (Lit l : c) REQUIRE(std::abs(l) <= cnf.num_vars);
            bool expected = kb_consistent(k);
            CHECK(solve_internal(cnf, 0, Deadline::never()).sat() == expected);
            if (cnf.num_vars <= 16) CHECK(brute_force_sat(cnf.num_vars, cnf.clauses) == expected);
        }
    }

    TEST_CASE("every tseitin model restricted to the atoms satisfies the formula") {
        std::mt19937_64 rng(7);
        for (int n = 0; n < 100; ++n) {
            auto f = random_formula(rng, 4, 4);
            auto cnf = tseitin(*f);
            auto r = solve_internal(cnf, 0, Deadline::never());
            if (!r.sat()) continue;
            auto sig = signature(*f);
            std::vector<bool> vals;
            for (const auto& a : sig) vals.push_back(r.model[cnf.vars.find(VarName::plain(a))]);
            CHECK(eval2(*f, Interpretation(sig, vals)));
        }
    }
}
