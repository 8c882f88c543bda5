#include <doctest.h>

#include <set>

#include "incmeter/encodings.hpp"
#include "incmeter/error.hpp"
#include "incmeter/oracles.hpp"
#include "incmeter/search.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;

namespace {

bool sat(const SatEncoding& e) { return solve_internal(e.cnf, 0, Deadline::never()).sat(); }

int expected_base(Measure m, const KnowledgeBase& kb, int u) {
    auto pk = prepare(kb);
    const int at = static_cast<int>(signature(pk).size());
    const int k = static_cast<int>(pk.size());
    switch (m) {
        case Measure::Contension: {
            int sites = 0;
            for (const auto& s : subformulas(pk))
                sites += s.node->kind != Kind::Top && s.node->kind != Kind::Bottom;
            return 3 * at + 3 * sites;
        }
        case Measure::Forgetting: return 3 * static_cast<int>(label_occurrences(pk).size());
        case Measure::HittingSet: return u * (at + k);
        case Measure::MaxDistance:
        case Measure::SumDistance: return at + 2 * k * at;
        case Measure::HitDistance: return at + k;
    }
    return -1;
}

std::vector<KnowledgeBase> corpus(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<KnowledgeBase> out;
    for (int i = 0; i < count; ++i) out.push_back(random_kb(rng, 1 + i % 3, 1 + i % 4, 3));
    return out;
}

}  // namespace

TEST_SUITE("encodings") {
    TEST_CASE("worked examples at their values") {
        CHECK_FALSE(sat(encode_contension(k4(), 0)));
        CHECK(sat(encode_contension(k4(), 1)));
        CHECK_FALSE(sat(encode_forgetting(k5(), 0)));
        CHECK(sat(encode_forgetting(k5(), 1)));
        CHECK_FALSE(sat(encode_hs(k4(), 1)));
        CHECK(sat(encode_hs(k4(), 2)));
        CHECK_FALSE(sat(encode_hs(k6(), 3)));
        CHECK(sat(encode_dmax(k4(), 1)));
        CHECK_FALSE(sat(encode_dsum(k6(), 6)));
        CHECK(sat(encode_dhit(k7(), 1)));
        CHECK_FALSE(sat(encode_dhit(k7(), 0)));
        CHECK(sat(encode_contension(kb("x\ny\n"), 0)));
    }

    TEST_CASE("encoding conformance over every bound of the range") {
        for (const auto& k : corpus(61, 120)) {
            for (auto m : kAllMeasures) {
                auto want = oracle(m, k);
                auto range = search_range(m, k);
                for (int u = range.min; u <= range.max; ++u) {
                    CAPTURE(to_string(k));
                    CAPTURE(measure_name(m));
                    CAPTURE(u);
                    bool expect = !want.is_infinite() && want.get() <= u;
                    int arg = m == Measure::HittingSet ? u + 1 : u;
                    CHECK(sat(encode(m, k, arg)) == expect);
                    // Binomial size is C(n, u+1); keep it to small counters.
                    if (m != Measure::HittingSet && range.max <= 8)
                        CHECK(sat(encode(m, k, arg, CardMethod::Binomial)) == expect);
                }
            }
        }
    }

    TEST_CASE("base signature sizes") {
        for (const auto& k : corpus(67, 60)) {
            for (auto m : kAllMeasures) {
                int u = m == Measure::HittingSet ? 1 + static_cast<int>(k.size()) / 2 : 1;
                auto e = encode(m, k, u);
                CHECK(e.base_vars == expected_base(m, k, u));
                CHECK(e.cnf.vars.size() == e.cnf.num_vars);
                CHECK(e.cnf.num_vars >= e.base_vars);
            }
        }
    }

    TEST_CASE("satisfiability is monotone in the bound") {
        for (const auto& k : corpus(71, 60)) {
            for (auto m : kAllMeasures) {
                auto range = search_range(m, k);
                bool seen = false;
                for (int u = range.min; u <= range.max; ++u) {
                    bool s = sat(encode(m, k, m == Measure::HittingSet ? u + 1 : u));
                    CHECK((!seen || s));
                    seen = seen || s;
                }
            }
        }
    }

    TEST_CASE("provenance covers every clause with known rule tags") {
        const std::set<std::string> tags{"SC3",  "SC4",  "SC5",  "SC6",  "SC7",  "SC8",  "SC9",  "SC10", "SC11",
                                         "SC12", "SC13", "SC14", "SC15", "SC16", "SC17", "SF1",  "SF3",  "SF4",
                                         "SF5",  "SH3",  "SH4",  "SDM4", "SDM5", "SDM6", "SDM7", "SDS4", "SDS5",
                                         "SDS6", "SDS7", "SDH3", "SDH4"};
        for (const auto& k : {k4(), k5(), k6(), k7(), kb("(a <=> b) => !c\nc && a\n")}) {
            for (auto m : kAllMeasures) {
                auto e = encode(m, k, 2);
                std::size_t next = 0;
                for (const auto& span : e.provenance) {
                    CHECK(span.begin == next);
                    CHECK(span.end > span.begin);
                    CHECK(tags.count(span.tag) == 1);
                    next = span.end;
                }
                CHECK(next == e.cnf.clauses.size());
                for (std::size_t i = 0; i < e.cnf.clauses.size(); ++i) CHECK(tags.count(e.rule_of(i)) == 1);
                for (const auto& c : e.cnf.clauses)
                    for (Lit l : c) CHECK((l != 0 && std::abs(l) <= e.cnf.num_vars));
            }
        }
    }

    TEST_CASE("maxsat instance") {
        auto inst = encode_contension_maxsat(k4());
        CHECK(inst.soft.size() == 2);
        for (Lit l : inst.soft) {
            CHECK(l < 0);
            CHECK(inst.hard.vars.name(-l).kind == VarKind::AtomTri);
            CHECK(inst.hard.vars.name(-l).theta == 'b');
        }
        CHECK(solve_maxsat(inst, {}).cost == 1);
        CHECK(solve_maxsat(encode_contension_maxsat(k7()), {}).cost == 1);
        CHECK(solve_maxsat(encode_contension_maxsat(kb("x || y\n")), {}).cost == 0);
        // Hard part is the contension encoding without its cardinality rule.
        auto full = encode_contension(k4(), 0);
        std::size_t card = 0;
        for (const auto& s : full.provenance)
            if (s.tag == "SC17") card += s.end - s.begin;
        CHECK(inst.hard.clauses.size() == full.cnf.clauses.size() - card);
    }

    TEST_CASE("degenerate inputs") {
        CHECK_THROWS_AS(encode_hs(KnowledgeBase{}, 1), Error);
        CHECK_THROWS_AS(encode_hs(k4(), 0), Error);
        // u = 0 turns the counter into unit negative literals.
        auto e = encode_dhit(k4(), 0);
        std::size_t units = 0;
        for (std::size_t i = 0; i < e.cnf.clauses.size(); ++i)
            if (e.rule_of(i) == "SDH4") {
                CHECK(e.cnf.clauses[i].size() == 1);
                CHECK(e.cnf.clauses[i][0] < 0);
                ++units;
            }
        CHECK(units == 2);
        CHECK(site_key(2, "lr") == "2:lr");
    }
}
