#pragma once

#include <string>
#include <vector>

#include "incmeter/formula.hpp"
#include "incmeter/solver.hpp"
#include "incmeter/value.hpp"

namespace incmeter {

enum class Truth3 { T, F, B };

char truth3_char(Truth3 v);

class ThreeValuedInterpretation {
  public:
    ThreeValuedInterpretation() = default;
    ThreeValuedInterpretation(std::vector<std::string> atoms, std::vector<Truth3> values);

    const std::vector<std::string>& atoms() const { return atoms_; }
    Truth3 value(std::string_view atom) const;
    std::vector<std::string> conflictbase() const;  // atoms mapped to b

  private:
    std::vector<std::string> atoms_;
    std::vector<Truth3> values_;
};

// Priest semantics; f must be over {!, &&, ||} plus constants.
Truth3 eval3(const Formula& f, const ThreeValuedInterpretation& w);

inline constexpr int kContensionAtomCap = 12;
inline constexpr int kForgettingAtomCap = 12;
inline constexpr int kHittingSetAtomCap = 10;
inline constexpr int kHittingSetFormulaCap = 8;
inline constexpr int kDistanceAtomCap = 10;

Value contension_oracle(const KnowledgeBase& kb);

enum class ForgetMode { Top, Bottom, Both };
// occ.path addresses the occurrence inside f; occ.formula is not consulted.
FormulaPtr forget(const FormulaPtr& f, const AtomOccurrence& occ, ForgetMode mode);

// Minimum over interpretations of the occurrences that must be overridden,
// computed formula by formula since occurrences are disjoint leaves.
Value forgetting_oracle(const KnowledgeBase& kb);

Value hs_oracle(const KnowledgeBase& kb);

int dalal(const Interpretation& a, const Interpretation& b);
Value dalal(const std::vector<Interpretation>& models, const Interpretation& b);

enum class DistanceKind { Max, Sum, Hit };
Value distance_oracle(const KnowledgeBase& kb, DistanceKind kind);

Value oracle(Measure m, const KnowledgeBase& kb);

// Brute-force baselines; SAT checks go through cfg.
Value naive_measure(const KnowledgeBase& kb, Measure m, const BackendConfig& cfg = {},
                    Deadline deadline = Deadline::never());

// Counts SAT checks issued by the naive procedures (diagnostics and tests).
struct NaiveStats {
    long sat_checks = 0;
};
Value naive_measure(const KnowledgeBase& kb, Measure m, const BackendConfig& cfg, Deadline deadline,
                    NaiveStats& stats);

// Distributive-law CNF of a formula over {!, &&, ||} and constants; each
// clause is a list of (atom, polarity). An empty clause stands for falsity.
using NamedClause = std::vector<std::pair<std::string, bool>>;
std::vector<NamedClause> distributive_cnf(const Formula& f, std::size_t clause_cap = 200000);

}  // namespace incmeter
