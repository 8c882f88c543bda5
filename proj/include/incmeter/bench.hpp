#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "incmeter/formula.hpp"
#include "incmeter/search.hpp"
#include "incmeter/value.hpp"

namespace incmeter {

struct SrsParams {
    double pd = 0.3;  // disjunction
    double pc = 0.3;  // conjunction
    double pn = 0.3;  // negation
    double discount = 0.5;
    int signature_size = 3;
    int formulas_lo = 5;
    int formulas_hi = 15;
    std::uint64_t seed = 0;

    void validate() const;
};

// Atoms are named x1..xn.
KnowledgeBase generate_srs(const SrsParams& p);

// count KBs whose seeds are drawn from a generator seeded with p.seed.
std::vector<KnowledgeBase> generate_corpus(const SrsParams& p, int count);

// Writes kb_NNNN.kb files and manifest.json; returns the written KB paths.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir, const SrsParams& p, int count);

struct NamedKb {
    std::string id;
    KnowledgeBase kb;
};

struct BenchRecord {
    enum class Status { Ok, Timeout, Error };
    std::string kb_id;
    Measure measure = Measure::Contension;
    Method method = Method::SatBinary;
    Status status = Status::Ok;
    std::optional<Value> value;
    std::string error;
    double total_seconds = 0;
    PhaseTimes times;
    int solver_calls = 0;

    std::string value_text() const;  // integer, "inf", "timeout" or "error"
};

struct Disagreement {
    std::string kb_id;
    Measure measure;
    std::string detail;
};

struct MatrixResult {
    std::vector<BenchRecord> records;  // job order: kb, measure, method
    std::vector<Disagreement> disagreements;
};

// Unsupported (method, measure) pairs are skipped.
MatrixResult run_matrix(const std::vector<NamedKb>& kbs, const std::vector<Measure>& measures,
                        const std::vector<Method>& methods, double timeout_seconds, int workers,
                        const SearchOptions& base = {});

void emit_reports(const std::vector<BenchRecord>& records, const std::filesystem::path& out_dir,
                  double timeout_seconds);

std::string csv_field(const std::string& s);

}  // namespace incmeter
