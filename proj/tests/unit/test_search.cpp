#include <doctest.h>

#include "incmeter/error.hpp"
#include "incmeter/oracles.hpp"
#include "incmeter/search.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;

TEST_SUITE("search") {
    TEST_CASE("call bound") {
        CHECK(binary_search_call_bound(1) == 1);
        CHECK(binary_search_call_bound(2) == 2);
        CHECK(binary_search_call_bound(3) == 2);
        CHECK(binary_search_call_bound(4) == 3);
        CHECK(binary_search_call_bound(7) == 3);
        CHECK(binary_search_call_bound(8) == 4);
        CHECK(binary_search_call_bound(1000) == 10);
        CHECK(binary_search_call_bound(0) == 0);
    }

    TEST_CASE("ranges") {
        auto r = search_range(Measure::SumDistance, k4());
        CHECK(r.max == 4);
        CHECK(r.infinity_possible);
        CHECK(search_range(Measure::HittingSet, k4()).max == 1);
        CHECK(search_range(Measure::HitDistance, k4()).max == 2);
        CHECK_FALSE(search_range(Measure::HitDistance, k4()).infinity_possible);
        CHECK(search_range(Measure::Forgetting, k5()).max == 6);
        CHECK_FALSE(search_range(Measure::Contension, k4()).infinity_possible);
        CHECK(search_range(Measure::Contension, kb("x && -\n")).infinity_possible);
    }

    TEST_CASE("worked examples through every SAT driver") {
        for (auto method : {Method::SatBinary, Method::SatLinear, Method::Naive}) {
            CHECK(compute(Measure::Contension, k4(), method).value == Value::of(1));
            CHECK(compute(Measure::HitDistance, k4(), method).value == Value::of(1));
            CHECK(compute(Measure::Forgetting, k5(), method).value == Value::of(1));
            CHECK(compute(Measure::HittingSet, k6(), method).value == Value::infinity());
            CHECK(compute(Measure::SumDistance, k6(), method).value == Value::infinity());
        }
        CHECK(compute(Measure::Contension, k4(), Method::MaxSat).value == Value::of(1));
        CHECK_THROWS_AS(compute(Measure::Forgetting, k4(), Method::MaxSat), UsageError);
    }

    TEST_CASE("linear search on a consistent KB makes one call") {
        for (auto m : kAllMeasures) {
            auto out = linear_search(m, kb("x || y\n!x\n"));
            CHECK(out.value == Value::of(0));
            CHECK(out.solver_calls == 1);
        }
    }

    TEST_CASE("empty KB is zero without solver calls") {
        for (auto m : kAllMeasures)
            for (auto method : {Method::SatBinary, Method::SatLinear, Method::Naive}) {
                auto out = compute(m, KnowledgeBase{}, method);
                CHECK(out.value == Value::of(0));
                CHECK(out.solver_calls == 0);
            }
    }

    TEST_CASE("binary == linear == oracle, within the call bound") {
        std::mt19937_64 rng(83);
        for (int n = 0; n < 100; ++n) {
            auto k = random_kb(rng, 1 + n % 3, 1 + n % 4, 3);
            for (auto m : kAllMeasures) {
                CAPTURE(to_string(k));
                CAPTURE(measure_name(m));
                auto b = binary_search(m, k);
                auto l = linear_search(m, k);
                auto want = oracle(m, k);
                CHECK(b.value == want);
                CHECK(l.value == want);
                CHECK(b.solver_calls <= binary_search_call_bound(search_range(m, k).size()));
                CHECK(b.solver_calls >= 1);
                CHECK(b.times.encoding + b.times.cnf + b.times.solving <= b.times.total + 1e-9);
            }
        }
    }

    TEST_CASE("precheck shortcut for distances") {
        SearchOptions opt;
        opt.precheck_formulas = true;
        auto out = binary_search(Measure::MaxDistance, k6(), opt);
        CHECK(out.value == Value::infinity());
        CHECK(out.solver_calls == 1);
        auto plain = binary_search(Measure::MaxDistance, k6());
        CHECK(plain.value == Value::infinity());
        CHECK(plain.solver_calls > 1);
    }

    TEST_CASE("expired deadline yields a timeout outcome") {
        SearchOptions opt;
        opt.deadline = Deadline::after(0);
        auto out = binary_search(Measure::Contension, k7(), opt);
        CHECK(out.timed_out);
        CHECK_FALSE(out.value);
        auto naive = compute(Measure::Contension, k7(), Method::Naive, opt);
        CHECK(naive.timed_out);
    }

    TEST_CASE("method names") {
        for (auto m : {Method::SatBinary, Method::SatLinear, Method::MaxSat, Method::Naive, Method::Asp})
            CHECK(parse_method(method_name(m)) == m);
        CHECK_FALSE(parse_method("sat"));
        CHECK(method_supports(Method::MaxSat, Measure::Contension));
        CHECK_FALSE(method_supports(Method::MaxSat, Measure::HitDistance));
    }

    TEST_CASE("asp method without a backend") {
        SearchOptions opt;
        opt.asp.reset();
        CHECK_THROWS_AS(compute(Measure::Contension, k4(), Method::Asp, opt), BackendError);
    }
}
