#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incmeter/formula.hpp"
#include "incmeter/solver.hpp"
#include "incmeter/value.hpp"

namespace incmeter {

struct AspProgram {
    Measure measure = Measure::Contension;
    std::string facts;         // instance part, one rule per line
    std::string static_rules;  // identical across KBs for a measure
    // ASP constant -> "atom:<name>" or "site:<formula>:<path>"
    std::map<std::string, std::string> symbols;

    std::string text() const { return facts + static_rules; }
};

// Static rule block of a measure's program.
std::string_view asp_static_block(Measure m);

// The KB is reduced and constant-folded first; top formulas are omitted.
AspProgram emit_asp(Measure m, const KnowledgeBase& kb);

std::string asp_atom_constant(std::string_view atom);
std::string asp_site_constant(std::size_t formula, std::string_view path);

struct AspConfig {
    std::string path;
    std::vector<std::string> args{"--opt-mode=opt", "--quiet=1"};
    double timeout = 600;

    // Reads INCMETER_ASP_SOLVER; nullopt when unset.
    static std::optional<AspConfig> from_env();
};

struct AnswerSetReport {
    enum class Status { Optimal, Unsatisfiable, Timeout };
    Status status = Status::Timeout;
    std::vector<std::string> atoms;  // atoms of the last reported answer set
    std::optional<long long> cost;
};

// Parses clingo-style text output.
AnswerSetReport parse_asp_output(std::string_view text);

// Throws BackendError when the solver cannot be run.
AnswerSetReport solve_asp(const AspProgram& prog, const AspConfig& cfg, Deadline deadline = Deadline::never());

// Unsatisfiable maps to inf when infinity_allowed, and is an error otherwise.
Value extract_value(Measure m, const AnswerSetReport& report, bool infinity_allowed);

}  // namespace incmeter
