#include <doctest.h>

#include <bit>

#include "incmeter/cardinality.hpp"
#include "incmeter/solver.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// True when the assignment of the n base variables extends to a model.
bool extends(const std::vector<Clause>& clauses, int num_vars, int n, unsigned mask) {
    CnfInstance cnf;
    cnf.num_vars = num_vars;
    cnf.clauses = clauses;
    for (int i = 0; i < n; ++i) cnf.clauses.push_back({(mask >> i) & 1 ? i + 1 : -(i + 1)});
    return solve_internal(cnf, 0, Deadline::never()).sat();
}

}  // namespace

TEST_SUITE("cardinality") {
    TEST_CASE("k = 0 forbids every variable") {
        CardinalityRequest req{0, {1, 2}, CardMethod::Sequential};
        VarMap alloc;
        alloc.get_or_create(VarName::plain("a"));
        alloc.get_or_create(VarName::plain("b"));
        auto clauses = at_most_sequential(req, alloc);
        for (unsigned m = 0; m < 4; ++m) CHECK(extends(clauses, alloc.size(), 2, m) == (m == 0));
    }

    TEST_CASE("exhaustive soundness and completeness for n <= 8") {
        for (int n = 0; n <= 8; ++n) {
            for (int k = 0; k <= n; ++k) {
                std::vector<Lit> vars;
                VarMap alloc;
                for (int i = 0; i < n; ++i) vars.push_back(alloc.get_or_create(VarName::plain("v" + std::to_string(i))));
                CardinalityRequest req{k, vars, CardMethod::Binomial};
                auto bin = at_most_binomial(req);
                CHECK(static_cast<long long>(bin.size()) == binom(n, k + 1));
                req.method = CardMethod::Sequential;
                auto seq = at_most_sequential(req, alloc);
                CHECK(static_cast<long long>(seq.size()) <= 3LL * n * k + n);
                for (unsigned m = 0; m < (1u << n); ++m) {
                    bool want = std::popcount(m) <= k;
                    CHECK(extends(bin, n, n, m) == want);
                    CHECK(extends(seq, alloc.size(), n, m) == want);
                }
            }
        }
    }

    TEST_CASE("negative literals count their complement") {
        VarMap alloc;
        int a = alloc.get_or_create(VarName::plain("a"));
        int b = alloc.get_or_create(VarName::plain("b"));
        CardinalityRequest req{0, {-a, b}, CardMethod::Sequential};
        auto clauses = at_most_sequential(req, alloc);
        // Only a=1, b=0 keeps both counted literals false.
        for (unsigned m = 0; m < 4; ++m) CHECK(extends(clauses, alloc.size(), 2, m) == (m == 1));
    }

    TEST_CASE("k >= n emits nothing") {
        VarMap alloc;
        int a = alloc.get_or_create(VarName::plain("a"));
        CardinalityRequest req{3, {a}, CardMethod::Sequential};
        CHECK(at_most_sequential(req, alloc).empty());
        req.method = CardMethod::Binomial;
        CHECK(at_most_binomial(req).empty());
    }

    TEST_CASE("add_at_most dispatches on the method") {
        CnfBuilder b;
        std::vector<Lit> vars;
        for (int i = 0; i < 4; ++i) vars.push_back(b.var(VarName::plain("v" + std::to_string(i))));
        add_at_most({1, vars, CardMethod::Binomial}, b);
        CHECK(b.clause_count() == 6);
        CHECK(b.vars().size() == 4);
    }
}
