#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "incmeter/bench.hpp"
#include "incmeter/cnf.hpp"
#include "incmeter/formula.hpp"

namespace testing_support {

using namespace incmeter;

inline KnowledgeBase kb(const char* text) { return parse_kb(text); }

inline KnowledgeBase k4() { return kb("x && y\n!y\n"); }
inline KnowledgeBase k5() { return kb("x && y\nx || y\nz\n!x\n"); }
inline KnowledgeBase k6() { return kb("x && !x\ny\nz\n"); }
inline KnowledgeBase k7() { return kb("x && y\nx || y\n!x\n"); }

inline std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

// Random formula over all connectives and constants; depth-bounded.
inline FormulaPtr random_formula(std::mt19937_64& rng, int atoms, int depth, bool constants = true) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 9);
    int r = pick(rng);
    if (r == 0 || depth <= 0) {
        std::uniform_int_distribution<int> a(1, atoms + (constants ? 1 : 0));
        int i = a(rng);
        if (i <= atoms) return atom("x" + std::to_string(i));
        return (rng() & 1) ? top() : bottom();
    }
    auto sub = [&] { return random_formula(rng, atoms, depth - 1, constants); };
    switch (r) {
        case 1:
        case 2: return neg(sub());
        case 3:
        case 4: return conj(sub(), sub());
        case 5:
        case 6: return disj(sub(), sub());
        case 7: return implies(sub(), sub());
        case 8: return iff(sub(), sub());
        default: return atom("x" + std::to_string(1 + rng() % atoms));
    }
}

inline KnowledgeBase random_kb(std::mt19937_64& rng, int atoms, int formulas, int depth, bool constants = true) {
    KnowledgeBase k;
    for (int i = 0; i < formulas; ++i) k.formulas.push_back(random_formula(rng, atoms, depth, constants));
    return k;
}

// Truth-table satisfiability of a clause set over variables 1..n.
inline bool brute_force_sat(int n, const std::vector<Clause>& clauses) {
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        bool ok = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (Lit l : c) {
                bool v = (mask >> (std::abs(l) - 1)) & 1;
                if ((l > 0) == v) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Truth-table satisfiability of a KB.
inline bool kb_consistent(const KnowledgeBase& k) {
    auto sig = signature(k);
    for (unsigned long long mask = 0; mask < (1ULL << sig.size()); ++mask)
        if (eval2(k, Interpretation::from_mask(sig, mask))) return true;
    return false;
}

// The corpus used by the encoding-conformance sweep.
inline SrsParams sweep_params(std::uint64_t seed, int atoms, int lo, int hi) {
    SrsParams p;
    p.seed = seed;
    p.signature_size = atoms;
    p.formulas_lo = lo;
    p.formulas_hi = hi;
    return p;
}

}  // namespace testing_support
