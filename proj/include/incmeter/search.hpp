#pragma once

#include <optional>
#include <string_view>

#include "incmeter/asp.hpp"
#include "incmeter/cardinality.hpp"
#include "incmeter/formula.hpp"
#include "incmeter/solver.hpp"
#include "incmeter/value.hpp"

namespace incmeter {

// Value range searched for a measure. For the hitting-set measure the bounds
// are values; the query for value v uses v+1 blocks.
struct SearchRange {
    Measure measure = Measure::Contension;
    int min = 0;
    int max = 0;
    bool infinity_possible = false;

    int size() const { return max - min + 1; }
};

SearchRange search_range(Measure m, const KnowledgeBase& kb);

// floor(log2(size)) + 1
int binary_search_call_bound(int range_size);

struct PhaseTimes {
    double encoding = 0;
    double cnf = 0;
    double solving = 0;
    double other = 0;
    double total = 0;
};

struct SearchOutcome {
    std::optional<Value> value;  // empty on timeout
    int solver_calls = 0;
    PhaseTimes times;
    bool timed_out = false;
    // Bounds known when a search stopped early.
    int lo = 0;
    int hi = 0;
};

struct SearchOptions {
    BackendConfig sat;
    std::optional<AspConfig> asp;
    CardMethod card = CardMethod::Sequential;
    Deadline deadline = Deadline::never();
    // Max/sum distance only: test each formula for satisfiability first.
    bool precheck_formulas = false;
};

SearchOutcome binary_search(Measure m, const KnowledgeBase& kb, const SearchOptions& opt = {});
SearchOutcome linear_search(Measure m, const KnowledgeBase& kb, const SearchOptions& opt = {});

enum class Method { SatBinary, SatLinear, MaxSat, Naive, Asp };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view s);
bool method_supports(Method method, Measure m);

SearchOutcome compute(Measure m, const KnowledgeBase& kb, Method method, const SearchOptions& opt = {});

}  // namespace incmeter
