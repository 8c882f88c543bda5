#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "asp_examples.hpp"
#include "incmeter/bench.hpp"
#include "incmeter/error.hpp"
#include "support.hpp"

using namespace incmeter;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

// Frozen from 10k corpora of 200 KBs (|At|=3, 5-15 formulas, pd=pc=pn=0.3,
// d=0.5): corpus means ranged over [1.619, 1.728], overall mean 1.674.
constexpr double kSrsBandLo = 1.60;
constexpr double kSrsBandHi = 1.75;

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("incmeter_test_" + name);
    fs::remove_all(p);
    return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    auto text = asp_examples::read_text(p.string());
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find("\r\n", pos);
        REQUIRE(end != std::string::npos);
        auto line = text.substr(pos, end - pos);
        std::vector<std::string> row;
        std::size_t s = 0;
        while (true) {
            auto c = line.find(',', s);
            row.push_back(line.substr(s, c == std::string::npos ? std::string::npos : c - s));
            if (c == std::string::npos) break;
            s = c + 1;
        }
        rows.push_back(row);
        pos = end + 2;
    }
    return rows;
}

BenchRecord rec(std::string id, Measure m, Method meth, BenchRecord::Status st, double secs) {
    BenchRecord r;
    r.kb_id = std::move(id);
    r.measure = m;
    r.method = meth;
    r.status = st;
    r.total_seconds = secs;
    if (st == BenchRecord::Status::Ok) r.value = Value::of(1);
    return r;
}

}  // namespace

TEST_SUITE("bench") {
    TEST_CASE("generator determinism") {
        auto p = sweep_params(7, 3, 5, 15);
        auto a = generate_srs(p);
        auto b = generate_srs(p);
        CHECK(structurally_equal(a, b));
        CHECK(a.size() >= 5);
        CHECK(a.size() <= 15);
        auto c1 = generate_corpus(p, 20);
        auto c2 = generate_corpus(p, 20);
        for (std::size_t i = 0; i < c1.size(); ++i) CHECK(structurally_equal(c1[i], c2[i]));
        for (const auto& k : c1)
            for (const auto& a2 : signature(k)) CHECK((a2 == "x1" || a2 == "x2" || a2 == "x3"));
    }

    TEST_CASE("zero connective mass gives atoms only") {
        SrsParams p;
        p.pd = p.pc = p.pn = 0;
        p.seed = 3;
        for (const auto& k : generate_corpus(p, 20))
            for (const auto& f : k.formulas) CHECK(f->kind == Kind::Atom);
    }

    TEST_CASE("mean atoms per formula lies in the frozen band") {
        SrsParams p = sweep_params(11, 3, 5, 15);
        double sum = 0;
        long n = 0;
        for (const auto& k : generate_corpus(p, 200))
            for (const auto& f : k.formulas) {
                sum += static_cast<double>(signature(*f).size());
                ++n;
            }
        double mean = sum / static_cast<double>(n);
        CHECK(mean >= kSrsBandLo);
        CHECK(mean <= kSrsBandHi);
    }

    TEST_CASE("parameter validation") {
        SrsParams p;
        p.pd = 0.6;
        p.pc = 0.6;
        CHECK_THROWS_AS(p.validate(), UsageError);
        SrsParams q;
        q.discount = 1.5;
        CHECK_THROWS_AS(q.validate(), UsageError);
        SrsParams r;
        r.formulas_lo = 4;
        r.formulas_hi = 2;
        CHECK_THROWS_AS(generate_srs(r), UsageError);
    }

    TEST_CASE("written corpus is byte-identical across runs") {
        auto d1 = scratch("corpus1"), d2 = scratch("corpus2");
        auto p = sweep_params(5, 4, 2, 6);
        auto a = write_corpus(d1, p, 8);
        auto b = write_corpus(d2, p, 8);
        REQUIRE(a.size() == 8);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].filename() == b[i].filename());
            CHECK(asp_examples::read_text(a[i].string()) == asp_examples::read_text(b[i].string()));
            CHECK(structurally_equal(parse_kb(asp_examples::read_text(a[i].string())), generate_corpus(p, 8)[i]));
        }
        CHECK(asp_examples::read_text((d1 / "manifest.json").string()) ==
              asp_examples::read_text((d2 / "manifest.json").string()));
        fs::remove_all(d1);
        fs::remove_all(d2);
    }

    TEST_CASE("matrix on K4 and K6") {
        auto res = run_matrix({{"k4", k4()}}, std::vector<Measure>(std::begin(kAllMeasures), std::end(kAllMeasures)),
                              {Method::SatBinary, Method::Naive}, 30, 2);
        REQUIRE(res.records.size() == 12);
        CHECK(res.disagreements.empty());
        for (const auto& r : res.records) {
            CHECK(r.status == BenchRecord::Status::Ok);
            CHECK(r.value == Value::of(1));
        }
        auto k6res = run_matrix({{"k6", k6()}}, {Measure::HittingSet}, {Method::SatBinary}, 30, 1);
        REQUIRE(k6res.records.size() == 1);
        CHECK(k6res.records[0].value_text() == "inf");
        CHECK(run_matrix({{"k4", k4()}}, {Measure::Contension}, {}, 30, 1).records.empty());
        // maxsat is skipped for measures other than contension.
        CHECK(run_matrix({{"k4", k4()}}, {Measure::HitDistance}, {Method::MaxSat}, 30, 1).records.empty());
    }

    TEST_CASE("records keep job order regardless of workers") {
        std::vector<NamedKb> kbs;
        auto corpus = generate_corpus(sweep_params(13, 3, 2, 5), 6);
        for (std::size_t i = 0; i < corpus.size(); ++i) kbs.push_back({"kb" + std::to_string(i), corpus[i]});
        std::vector<Measure> ms{Measure::Contension, Measure::HitDistance};
        auto a = run_matrix(kbs, ms, {Method::SatBinary, Method::SatLinear}, 30, 1);
        auto b = run_matrix(kbs, ms, {Method::SatBinary, Method::SatLinear}, 30, 4);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].kb_id == b.records[i].kb_id);
            CHECK(a.records[i].value == b.records[i].value);
            CHECK(a.records[i].solver_calls == b.records[i].solver_calls);
        }
        CHECK(a.disagreements.empty());
    }

    TEST_CASE("empty record set gives header-only files") {
        auto d = scratch("empty");
        emit_reports({}, d, 10);
        CHECK(read_csv(d / "results.csv").size() == 1);
        CHECK(read_csv(d / "summary.csv").size() == 1);
        fs::remove_all(d);
    }

    TEST_CASE("summary, cactus and scatter contents") {
        using S = BenchRecord::Status;
        std::vector<BenchRecord> rs;
        double secs[] = {0.5, 0.1, 9.0, 0.3, 9.0};
        S st[] = {S::Ok, S::Ok, S::Timeout, S::Ok, S::Timeout};
        for (int i = 0; i < 5; ++i) {
            rs.push_back(rec("kb" + std::to_string(i), Measure::Contension, Method::SatBinary, st[i], secs[i]));
            rs.push_back(rec("kb" + std::to_string(i), Measure::Contension, Method::Naive, S::Ok, 0.2));
        }
        rs.push_back(rec("weird,\"id\"", Measure::Contension, Method::MaxSat, S::Error, 0.0));
        rs.back().error = "boom";
        auto d = scratch("reports");
        emit_reports(rs, d, 10);

        auto summary = read_csv(d / "summary.csv");
        REQUIRE(summary.size() == 4);
        CHECK(summary[1][0] == "contension");
        CHECK(summary[1][1] == "sat-binary");
        CHECK(summary[1][2] == "5");
        CHECK(summary[1][3] == "3");
        CHECK(summary[1][4] == "2");
        CHECK(summary[3][5] == "1");

        auto cactus = read_csv(d / "cactus_contension_sat-binary.csv");
        REQUIRE(cactus.size() == 4);  // header + three solved
        double prev = -1;
        for (std::size_t i = 1; i < cactus.size(); ++i) {
            double v = std::stod(cactus[i][1]);
            CHECK(v >= prev);
            prev = v;
        }

        auto scatter = read_csv(d / "scatter_contension_sat-binary_vs_naive.csv");
        REQUIRE(scatter.size() == 6);
        int pinned = 0;
        for (std::size_t i = 1; i < scatter.size(); ++i) pinned += std::stod(scatter[i][1]) == 10.0;
        CHECK(pinned == 2);

        auto results = asp_examples::read_text((d / "results.csv").string());
        CHECK(results.find("\"weird,\"\"id\"\"\"") != std::string::npos);
        CHECK(results.find(",error,") != std::string::npos);
        fs::remove_all(d);
    }

    TEST_CASE("csv quoting") {
        CHECK(csv_field("plain") == "plain");
        CHECK(csv_field("a,b") == "\"a,b\"");
        CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
        CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    }
}
