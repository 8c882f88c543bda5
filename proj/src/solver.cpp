#include "incmeter/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "incmeter/cardinality.hpp"
#include "incmeter/error.hpp"
#include "incmeter/process.hpp"

namespace incmeter {

Deadline Deadline::after(double seconds) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    return d;
}

double Deadline::remaining_seconds() const {
    if (!at_) return std::numeric_limits<double>::infinity();
    return std::chrono::duration<double>(*at_ - Clock::now()).count();
}

Deadline Deadline::min(const Deadline& o) const {
    if (!at_) return o;
    if (!o.at_) return *this;
    return *at_ <= *o.at_ ? *this : o;
}

BackendConfig BackendConfig::from_env() {
    BackendConfig cfg;
    if (const char* p = std::getenv("INCMETER_SAT_SOLVER"); p && *p) {
        cfg.kind = Kind::External;
        cfg.path = p;
    }
    return cfg;
}

bool satisfies(const std::vector<bool>& model, const std::vector<Clause>& clauses) {
    for (const auto& c : clauses) {
        bool ok = false;
        for (Lit l : c) {
            auto v = static_cast<std::size_t>(std::abs(l));
            if (v >= model.size()) return false;
            if (model[v] == (l > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

SolverResult solve(const CnfInstance& cnf, const BackendConfig& cfg, Deadline deadline) {
    auto d = deadline.min(Deadline::after(cfg.timeout));
    if (cfg.kind == BackendConfig::Kind::External) return solve_external(cnf, cfg, d);
    return solve_internal(cnf, cfg.seed, d);
}

// ---------------------------------------------------------------- DIMACS

std::string emit_dimacs(const CnfInstance& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& c : cnf.clauses) {
        for (Lit l : c) {
            out += std::to_string(l);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

DimacsProblem parse_dimacs(std::string_view text) {
    DimacsProblem p;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    std::size_t declared = 0;
    Clause cur;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p_tok, fmt;
            ls >> p_tok >> fmt >> p.num_vars >> declared;
            if (!ls || fmt != "cnf") throw Error("malformed DIMACS header: " + line);
            header = true;
            continue;
        }
        if (!header) throw Error("DIMACS clause before header");
        long long v;
        while (ls >> v) {
            if (v == 0) {
                p.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::llabs(v) > p.num_vars) throw Error("DIMACS literal out of range");
                cur.push_back(static_cast<Lit>(v));
            }
        }
    }
    if (!cur.empty()) throw Error("unterminated DIMACS clause");
    if (!header) throw Error("missing DIMACS header");
    if (p.clauses.size() != declared) throw Error("DIMACS clause count does not match header");
    return p;
}

SolverResult parse_solver_output(std::string_view text, int num_vars) {
    SolverResult res;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_status = false;
    std::vector<bool> model(static_cast<std::size_t>(num_vars + 1), false);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("s ", 0) == 0) {
            auto s = line.substr(2);
            if (s == "SATISFIABLE") {
                res.status = SolverResult::Status::Sat;
            } else if (s == "UNSATISFIABLE") {
                res.status = SolverResult::Status::Unsat;
            } else if (s == "UNKNOWN") {
                res.status = SolverResult::Status::Timeout;
            } else {
                throw BackendError("unknown solver status line: " + line);
            }
            have_status = true;
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream ls(line.substr(1));
            long long v;
            while (ls >> v) {
                if (v == 0) continue;
                auto idx = static_cast<std::size_t>(std::llabs(v));
                if (idx > static_cast<std::size_t>(num_vars)) continue;
                model[idx] = v > 0;
            }
        }
    }
    if (!have_status) throw BackendError("solver output has no status line");
    if (res.sat()) res.model = std::move(model);
    return res;
}

SolverResult solve_external(const CnfInstance& cnf, const BackendConfig& cfg, Deadline deadline) {
    if (cfg.path.empty()) throw BackendError("no external SAT solver configured");
    auto start = Clock::now();
    TempFile file(".cnf", emit_dimacs(cnf));
    auto args = cfg.args;
    args.push_back(file.path());
    auto pr = run_process(cfg.path, args, deadline);
    SolverResult res;
    if (pr.timed_out) {
        res.status = SolverResult::Status::Timeout;
    } else {
        res = parse_solver_output(pr.output, cnf.num_vars);
        if (res.sat() && !satisfies(res.model, cnf.clauses))
            throw BackendError("external solver returned a non-model");
    }
    res.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

// ---------------------------------------------------------------- MaxSAT

std::string emit_wcnf(const MaxSatInstance& inst) {
    const auto top = inst.soft.size() + 1;
    std::string out = "p wcnf " + std::to_string(inst.hard.num_vars) + " " +
                      std::to_string(inst.hard.clauses.size() + inst.soft.size()) + " " + std::to_string(top) +
                      "\n";
    for (const auto& c : inst.hard.clauses) {
        out += std::to_string(top);
        for (Lit l : c) out += " " + std::to_string(l);
        out += " 0\n";
    }
    for (Lit l : inst.soft) out += "1 " + std::to_string(l) + " 0\n";
    return out;
}

MaxSatResult solve_maxsat(const MaxSatInstance& inst, const BackendConfig& cfg, Deadline deadline) {
    MaxSatResult out;
    // A soft unit l is violated exactly when -l holds, so the counter runs over -l.
    std::vector<Lit> violated;
    for (Lit l : inst.soft) violated.push_back(-l);

    auto query = [&](int k) -> SolverResult {
        CnfBuilder b(inst.hard.vars);
        for (const auto& c : inst.hard.clauses) b.add_clause(c);
        if (!violated.empty()) add_at_most({k, violated, CardMethod::Sequential}, b);
        auto cnf = std::move(b).finish();
        ++out.solver_calls;
        return solve(cnf, cfg, deadline);
    };

    int lo = 0;
    int hi = static_cast<int>(violated.size());
    auto top = query(hi);
    if (top.status == SolverResult::Status::Timeout) {
        out.status = MaxSatResult::Status::Timeout;
        return out;
    }
    if (!top.sat()) {
        out.status = MaxSatResult::Status::HardUnsat;
        return out;
    }
    auto best_model = top.model;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        auto r = query(mid);
        if (r.status == SolverResult::Status::Timeout) {
            out.status = MaxSatResult::Status::Timeout;
            return out;
        }
        if (r.sat()) {
            hi = mid;
            best_model = std::move(r.model);
        } else {
            lo = mid + 1;
        }
    }
    out.cost = hi;
    best_model.resize(static_cast<std::size_t>(inst.hard.num_vars + 1));
    out.model = std::move(best_model);
    int actual = 0;
    for (Lit l : inst.soft)
        if (out.model[static_cast<std::size_t>(std::abs(l))] != (l > 0)) ++actual;
    if (actual != out.cost) throw Error("MaxSAT model cost disagrees with the proven optimum");
    return out;
}

}  // namespace incmeter
