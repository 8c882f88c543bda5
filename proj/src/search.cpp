#include "incmeter/search.hpp"

#include <chrono>

#include "incmeter/encodings.hpp"
#include "incmeter/error.hpp"
#include "incmeter/oracles.hpp"

namespace incmeter {

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool has_bottom_member(const KnowledgeBase& kb) {
    for (const auto& f : prepare(kb).formulas)
        if (f->kind == Kind::Bottom) return true;
    return false;
}

std::size_t reduced_occurrences(const KnowledgeBase& kb) {
    KnowledgeBase r;
    for (const auto& f : kb.formulas) r.formulas.push_back(reduce_connectives(f));
    return label_occurrences(r).size();
}

class Runner {
  public:
    Runner(Measure m, const KnowledgeBase& kb, const SearchOptions& opt, SearchOutcome& out)
        : m_(m), kb_(kb), opt_(opt), out_(out) {}

    // Solves the encoding for value v (hs: v+1 blocks).
    SolverResult::Status query(int v) {
        int u = m_ == Measure::HittingSet ? v + 1 : v;
        auto t0 = Clock::now();
        auto problem = build_encoding(m_, kb_, u, opt_.card);
        auto t1 = Clock::now();
        auto enc = to_cnf(std::move(problem));
        auto t2 = Clock::now();
        auto r = solve(enc.cnf, opt_.sat, opt_.deadline);
        out_.times.encoding += std::chrono::duration<double>(t1 - t0).count();
        out_.times.cnf += std::chrono::duration<double>(t2 - t1).count();
        out_.times.solving += since(t2);
        ++out_.solver_calls;
        return r.status;
    }

    // True when some member is unsatisfiable on its own.
    std::optional<bool> precheck() {
        for (const auto& f : kb_.formulas) {
            auto t0 = Clock::now();
            auto cnf = tseitin(*f);
            auto t1 = Clock::now();
            auto r = solve(cnf, opt_.sat, opt_.deadline);
            out_.times.cnf += std::chrono::duration<double>(t1 - t0).count();
            out_.times.solving += since(t1);
            ++out_.solver_calls;
            if (r.status == SolverResult::Status::Timeout) return std::nullopt;
            if (!r.sat()) return true;
        }
        return false;
    }

  private:
    Measure m_;
    const KnowledgeBase& kb_;
    const SearchOptions& opt_;
    SearchOutcome& out_;
};

void finish_times(SearchOutcome& out, Clock::time_point start) {
    out.times.total = since(start);
    double named = out.times.encoding + out.times.cnf + out.times.solving;
    out.times.other = out.times.total > named ? out.times.total - named : 0;
}

Value exhausted(const SearchRange& range) {
    if (!range.infinity_possible) throw Error("search exhausted a range without an infinite value");
    return Value::infinity();
}

bool run_precheck(Measure m, const SearchOptions& opt, Runner& run, SearchOutcome& out) {
    if (!opt.precheck_formulas || (m != Measure::MaxDistance && m != Measure::SumDistance)) return false;
    auto r = run.precheck();
    if (!r) {
        out.timed_out = true;
        return true;
    }
    if (*r) {
        out.value = Value::infinity();
        return true;
    }
    return false;
}

}  // namespace

SearchRange search_range(Measure m, const KnowledgeBase& kb) {
    SearchRange r;
    r.measure = m;
    const int at = static_cast<int>(signature(kb).size());
    const int k = static_cast<int>(kb.size());
    switch (m) {
        case Measure::Contension:
            r.max = at;
            r.infinity_possible = has_bottom_member(kb);
            break;
        case Measure::Forgetting:
            r.max = static_cast<int>(reduced_occurrences(kb));
            r.infinity_possible = has_bottom_member(kb);
            break;
        case Measure::HittingSet:
            r.max = k - 1;
            r.infinity_possible = true;
            break;
        case Measure::MaxDistance:
            r.max = at;
            r.infinity_possible = true;
            break;
        case Measure::SumDistance:
            r.max = at * k;
            r.infinity_possible = true;
            break;
        case Measure::HitDistance: r.max = k; break;
    }
    return r;
}

int binary_search_call_bound(int range_size) {
    if (range_size <= 0) return 0;
    int b = 0;
    while ((2LL << b) <= range_size) ++b;
    return b + 1;
}

SearchOutcome binary_search(Measure m, const KnowledgeBase& kb, const SearchOptions& opt) {
    auto start = Clock::now();
    SearchOutcome out;
    if (kb.empty()) {
        out.value = Value::of(0);
        finish_times(out, start);
        return out;
    }
    Runner run(m, kb, opt, out);
    if (run_precheck(m, opt, run, out)) {
        finish_times(out, start);
        return out;
    }
    const auto range = search_range(m, kb);
    int min = range.min;
    int max = range.max;
    int inc_val = -1;
    while (min <= max) {
        int mid = min + (max - min) / 2;
        auto status = opt.deadline.expired() ? SolverResult::Status::Timeout : run.query(mid);
        if (status == SolverResult::Status::Timeout) {
            out.timed_out = true;
            out.lo = min;
            out.hi = inc_val < 0 ? range.max : inc_val;
            finish_times(out, start);
            return out;
        }
        if (status == SolverResult::Status::Sat) {
            if (inc_val < 0 || mid < inc_val) inc_val = mid;
            max = mid - 1;
        } else {
            min = mid + 1;
        }
    }
    if (out.solver_calls > binary_search_call_bound(range.size()))
        throw Error("binary search exceeded its solver-call bound");
    out.value = inc_val < 0 ? exhausted(range) : Value::of(inc_val);
    out.lo = out.hi = inc_val;
    finish_times(out, start);
    return out;
}

SearchOutcome linear_search(Measure m, const KnowledgeBase& kb, const SearchOptions& opt) {
    auto start = Clock::now();
    SearchOutcome out;
    if (kb.empty()) {
        out.value = Value::of(0);
        finish_times(out, start);
        return out;
    }
    Runner run(m, kb, opt, out);
    if (run_precheck(m, opt, run, out)) {
        finish_times(out, start);
        return out;
    }
    const auto range = search_range(m, kb);
    for (int u = range.min; u <= range.max; ++u) {
        auto status = opt.deadline.expired() ? SolverResult::Status::Timeout : run.query(u);
        if (status == SolverResult::Status::Timeout) {
            out.timed_out = true;
            out.lo = u;
            out.hi = range.max;
            finish_times(out, start);
            return out;
        }
        if (status == SolverResult::Status::Sat) {
            out.value = Value::of(u);
            out.lo = out.hi = u;
            finish_times(out, start);
            return out;
        }
    }
    out.value = exhausted(range);
    finish_times(out, start);
    return out;
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::SatBinary: return "sat-binary";
        case Method::SatLinear: return "sat-linear";
        case Method::MaxSat: return "maxsat";
        case Method::Naive: return "naive";
        case Method::Asp: return "asp";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view s) {
    for (auto m : {Method::SatBinary, Method::SatLinear, Method::MaxSat, Method::Naive, Method::Asp})
        if (method_name(m) == s) return m;
    return std::nullopt;
}

bool method_supports(Method method, Measure m) { return method != Method::MaxSat || m == Measure::Contension; }

SearchOutcome compute(Measure m, const KnowledgeBase& kb, Method method, const SearchOptions& opt) {
    if (!method_supports(method, m))
        throw UsageError(std::string(method_name(method)) + " does not support " + std::string(measure_name(m)));
    switch (method) {
        case Method::SatBinary: return binary_search(m, kb, opt);
        case Method::SatLinear: return linear_search(m, kb, opt);
        default: break;
    }
    auto start = Clock::now();
    SearchOutcome out;
    if (kb.empty()) {
        out.value = Value::of(0);
        finish_times(out, start);
        return out;
    }
    if (method == Method::MaxSat) {
        auto t0 = Clock::now();
        auto inst = encode_contension_maxsat(kb);
        out.times.encoding = since(t0);
        auto t1 = Clock::now();
        auto r = solve_maxsat(inst, opt.sat, opt.deadline);
        out.times.solving = since(t1);
        out.solver_calls = r.solver_calls;
        if (r.status == MaxSatResult::Status::Timeout) {
            out.timed_out = true;
        } else if (r.status == MaxSatResult::Status::HardUnsat) {
            out.value = exhausted(search_range(m, kb));
        } else {
            out.value = Value::of(r.cost);
        }
    } else if (method == Method::Naive) {
        NaiveStats stats;
        auto t0 = Clock::now();
        try {
            out.value = naive_measure(kb, m, opt.sat, opt.deadline, stats);
        } catch (const TimeoutError&) {
            out.timed_out = true;
        }
        out.times.solving = since(t0);
        out.solver_calls = static_cast<int>(stats.sat_checks);
    } else {
        if (!opt.asp) throw BackendError("ASP backend unavailable: set INCMETER_ASP_SOLVER");
        auto t0 = Clock::now();
        auto prog = emit_asp(m, kb);
        out.times.encoding = since(t0);
        auto t1 = Clock::now();
        auto report = solve_asp(prog, *opt.asp, opt.deadline);
        out.times.solving = since(t1);
        out.solver_calls = 1;
        if (report.status == AnswerSetReport::Status::Timeout) {
            out.timed_out = true;
        } else {
            out.value = extract_value(m, report, search_range(m, kb).infinity_possible);
        }
    }
    finish_times(out, start);
    return out;
}

}  // namespace incmeter
