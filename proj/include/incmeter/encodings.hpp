#pragma once

#include <string>
#include <vector>

#include "incmeter/cardinality.hpp"
#include "incmeter/cnf.hpp"
#include "incmeter/formula.hpp"
#include "incmeter/solver.hpp"
#include "incmeter/value.hpp"

namespace incmeter {

// Clauses [begin, end) of a CNF instance produced by one rule.
struct RuleSpan {
    std::string tag;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Formula-level encoding before clausification.
struct EncodedProblem {
    struct Item {
        std::string tag;
        Expr expr;
    };
    struct Card {
        std::string tag;
        CardinalityRequest req;
    };
    Measure measure = Measure::Contension;
    int bound = 0;
    VarMap vars;  // base variables only
    std::vector<Item> formulas;
    std::vector<Card> cards;
};

struct SatEncoding {
    CnfInstance cnf;
    Measure measure = Measure::Contension;
    int bound = 0;
    std::vector<RuleSpan> provenance;  // contiguous, covering every clause
    int base_vars = 0;                 // variables before Tseitin and cardinality auxiliaries

    const std::string& rule_of(std::size_t clause) const;
};

// u is the bound; for the hitting-set measure it is the number of blocks (u >= 1).
// The KB is reduced and constant-folded internally.
EncodedProblem build_encoding(Measure m, const KnowledgeBase& kb, int u,
                              CardMethod card = CardMethod::Sequential);
SatEncoding to_cnf(EncodedProblem p);

SatEncoding encode(Measure m, const KnowledgeBase& kb, int u, CardMethod card = CardMethod::Sequential);
SatEncoding encode_contension(const KnowledgeBase& kb, int u);
SatEncoding encode_forgetting(const KnowledgeBase& kb, int u);
SatEncoding encode_hs(const KnowledgeBase& kb, int blocks);
SatEncoding encode_dmax(const KnowledgeBase& kb, int u);
SatEncoding encode_dsum(const KnowledgeBase& kb, int u);
SatEncoding encode_dhit(const KnowledgeBase& kb, int u);

// Hard part: SC3-SC16. Soft: one unit !X_b per atom.
MaxSatInstance encode_contension_maxsat(const KnowledgeBase& kb);

// Site key used for subformula variables: "<formula>:<path>".
std::string site_key(std::size_t formula, const std::string& path);

}  // namespace incmeter
