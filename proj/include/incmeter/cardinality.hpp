#pragma once

#include <vector>

#include "incmeter/cnf.hpp"

namespace incmeter {

enum class CardMethod { Binomial, Sequential };

struct CardinalityRequest {
    int k = 0;
    std::vector<Lit> vars;  // distinct; negative literals count their complement
    CardMethod method = CardMethod::Sequential;
};

// One all-negative clause per (k+1)-subset of vars.
std::vector<Clause> at_most_binomial(const CardinalityRequest& req);

// Sequential counter; register bits are allocated as Aux variables in alloc.
std::vector<Clause> at_most_sequential(const CardinalityRequest& req, VarMap& alloc);

// Dispatches on req.method and appends the clauses to b.
void add_at_most(const CardinalityRequest& req, CnfBuilder& b);

}  // namespace incmeter
