#include "incmeter/cardinality.hpp"

#include <cstdlib>
#include <set>

#include "incmeter/error.hpp"

namespace incmeter {

namespace {

void check(const CardinalityRequest& req) {
    if (req.k < 0) throw Error("at_most with negative bound");
    std::set<int> seen;
    for (Lit l : req.vars) {
        if (l == 0) throw Error("at_most over literal 0");
        if (!seen.insert(std::abs(l)).second) throw Error("at_most over repeated variable");
    }
}

void subsets(const std::vector<Lit>& vars, std::size_t start, std::size_t need, Clause& cur,
             std::vector<Clause>& out) {
    if (need == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + need <= vars.size(); ++i) {
        cur.push_back(-vars[i]);
        subsets(vars, i + 1, need - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Clause> at_most_binomial(const CardinalityRequest& req) {
    check(req);
    std::vector<Clause> out;
    auto n = req.vars.size();
    auto k = static_cast<std::size_t>(req.k);
    if (k >= n) return out;
    Clause cur;
    subsets(req.vars, 0, k + 1, cur, out);
    return out;
}

std::vector<Clause> at_most_sequential(const CardinalityRequest& req, VarMap& alloc) {
    check(req);
    std::vector<Clause> out;
    const auto& x = req.vars;
    const int n = static_cast<int>(x.size());
    const int k = req.k;
    if (k >= n) return out;
    if (k == 0) {
        for (Lit l : x) out.push_back({-l});
        return out;
    }
    // s[i][j]: at least j+1 of x[0..i] are true, for i < n-1.
    std::vector<std::vector<Lit>> s(static_cast<std::size_t>(n - 1), std::vector<Lit>(static_cast<std::size_t>(k)));
    for (auto& row : s)
        for (auto& v : row) v = alloc.fresh_aux();
    auto S = [&](int i, int j) { return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    auto X = [&](int i) { return x[static_cast<std::size_t>(i)]; };

    out.push_back({-X(0), S(0, 0)});
    for (int j = 1; j < k; ++j) out.push_back({-S(0, j)});
    for (int i = 1; i < n - 1; ++i) {
        out.push_back({-X(i), S(i, 0)});
        out.push_back({-S(i - 1, 0), S(i, 0)});
        for (int j = 1; j < k; ++j) {
            out.push_back({-X(i), -S(i - 1, j - 1), S(i, j)});
            out.push_back({-S(i - 1, j), S(i, j)});
        }
        out.push_back({-X(i), -S(i - 1, k - 1)});
    }
    out.push_back({-X(n - 1), -S(n - 2, k - 1)});
    return out;
}

void add_at_most(const CardinalityRequest& req, CnfBuilder& b) {
    auto clauses = req.method == CardMethod::Binomial ? at_most_binomial(req)
                                                      : at_most_sequential(req, b.vars());
    for (auto& c : clauses) b.add_clause(std::move(c));
}

}  // namespace incmeter
