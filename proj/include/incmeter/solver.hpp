#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incmeter/cnf.hpp"

namespace incmeter {

using Clock = std::chrono::steady_clock;

class Deadline {
  public:
    static Deadline never() { return Deadline(); }
    static Deadline after(double seconds);
    bool expired() const { return at_ && Clock::now() >= *at_; }
    bool bounded() const { return at_.has_value(); }
    double remaining_seconds() const;  // +inf when unbounded
    Deadline min(const Deadline& o) const;

  private:
    std::optional<Clock::time_point> at_;
};

struct BackendConfig {
    enum class Kind { Internal, External };
    Kind kind = Kind::Internal;
    std::string path;  // external solver executable
    std::vector<std::string> args;
    double timeout = 600;  // seconds, per call
    std::uint64_t seed = 0;

    // External when INCMETER_SAT_SOLVER is set, internal otherwise.
    static BackendConfig from_env();
};

struct SolverResult {
    enum class Status { Sat, Unsat, Timeout };
    Status status = Status::Unsat;
    std::vector<bool> model;  // index 1..num_vars; model[0] unused
    double elapsed = 0;

    bool sat() const { return status == Status::Sat; }
};

SolverResult solve(const CnfInstance& cnf, const BackendConfig& cfg, Deadline deadline = Deadline::never());
SolverResult solve_internal(const CnfInstance& cnf, std::uint64_t seed, Deadline deadline);
SolverResult solve_external(const CnfInstance& cnf, const BackendConfig& cfg, Deadline deadline);

bool satisfies(const std::vector<bool>& model, const std::vector<Clause>& clauses);

std::string emit_dimacs(const CnfInstance& cnf);
struct DimacsProblem {
    int num_vars = 0;
    std::vector<Clause> clauses;
};
DimacsProblem parse_dimacs(std::string_view text);

// Reads "s ..." and "v ..." lines of a solver transcript.
SolverResult parse_solver_output(std::string_view text, int num_vars);

struct MaxSatInstance {
    CnfInstance hard;
    std::vector<Lit> soft;  // unit soft clauses, weight 1 each
};

std::string emit_wcnf(const MaxSatInstance& inst);

struct MaxSatResult {
    enum class Status { Optimal, HardUnsat, Timeout };
    Status status = Status::Optimal;
    int cost = 0;
    std::vector<bool> model;
    int solver_calls = 0;
};

// Iterative SAT over hard plus an at-most-k counter on the violated softs,
// with binary search on k.
MaxSatResult solve_maxsat(const MaxSatInstance& inst, const BackendConfig& cfg,
                          Deadline deadline = Deadline::never());

}  // namespace incmeter
