#include "incmeter/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "incmeter/error.hpp"

namespace incmeter {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- generation

void SrsParams::validate() const {
    auto prob = [](double p) { return p >= 0 && p <= 1; };
    if (!prob(pd) || !prob(pc) || !prob(pn) || pd + pc + pn > 1 + 1e-12)
        throw UsageError("SRS probabilities must lie in [0,1] and sum to at most 1");
    if (!(discount > 0 && discount < 1)) throw UsageError("SRS discount must lie in (0,1)");
    if (signature_size < 1) throw UsageError("SRS signature size must be positive");
    if (formulas_lo < 0 || formulas_hi < formulas_lo) throw UsageError("invalid SRS formula count range");
}

namespace {

// Distribution helpers written out so results do not depend on the standard
// library's distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return rng();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % span;
}

FormulaPtr srs_formula(const SrsParams& p, std::mt19937_64& rng, double scale) {
    double r = uniform01(rng);
    double pd = p.pd * scale, pc = p.pc * scale, pn = p.pn * scale;
    double next = scale * p.discount;
    if (r < pd) {
        auto a = srs_formula(p, rng, next);
        return disj(a, srs_formula(p, rng, next));
    }
    if (r < pd + pc) {
        auto a = srs_formula(p, rng, next);
        return conj(a, srs_formula(p, rng, next));
    }
    if (r < pd + pc + pn) return neg(srs_formula(p, rng, next));
    auto i = uniform_int(rng, 1, static_cast<std::uint64_t>(p.signature_size));
    return atom("x" + std::to_string(i));
}

}  // namespace

KnowledgeBase generate_srs(const SrsParams& p) {
    p.validate();
    std::mt19937_64 rng(p.seed);
    KnowledgeBase kb;
    auto n = uniform_int(rng, static_cast<std::uint64_t>(p.formulas_lo), static_cast<std::uint64_t>(p.formulas_hi));
    for (std::uint64_t i = 0; i < n; ++i) kb.formulas.push_back(srs_formula(p, rng, 1.0));
    return kb;
}

namespace {

std::vector<std::uint64_t> corpus_seeds(std::uint64_t master, int count) {
    std::mt19937_64 rng(master);
    std::vector<std::uint64_t> out;
    for (int i = 0; i < count; ++i) out.push_back(rng());
    return out;
}

}  // namespace

std::vector<KnowledgeBase> generate_corpus(const SrsParams& p, int count) {
    std::vector<KnowledgeBase> out;
    for (auto s : corpus_seeds(p.seed, count)) {
        auto q = p;
        q.seed = s;
        out.push_back(generate_srs(q));
    }
    return out;
}

std::vector<fs::path> write_corpus(const fs::path& dir, const SrsParams& p, int count) {
    p.validate();
    fs::create_directories(dir);
    nlohmann::json manifest;
    manifest["generator"] = "srs";
    manifest["params"] = {{"pd", p.pd},
                          {"pc", p.pc},
                          {"pn", p.pn},
                          {"discount", p.discount},
                          {"signature_size", p.signature_size},
                          {"formulas_lo", p.formulas_lo},
                          {"formulas_hi", p.formulas_hi},
                          {"seed", p.seed}};
    manifest["instances"] = nlohmann::json::array();
    std::vector<fs::path> paths;
    auto seeds = corpus_seeds(p.seed, count);
    for (int i = 0; i < count; ++i) {
        auto q = p;
        q.seed = seeds[static_cast<std::size_t>(i)];
        auto kb = generate_srs(q);
        std::ostringstream name;
        name << "kb_" << std::setw(4) << std::setfill('0') << i << ".kb";
        auto path = dir / name.str();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << to_string(kb);
        paths.push_back(path);
        manifest["instances"].push_back({{"file", name.str()}, {"seed", q.seed}, {"formulas", kb.size()}});
    }
    std::ofstream m(dir / "manifest.json", std::ios::binary);
    if (!m) throw Error("cannot write manifest in " + dir.string());
    m << manifest.dump(2) << "\n";
    return paths;
}

// ---------------------------------------------------------------- matrix

std::string BenchRecord::value_text() const {
    switch (status) {
        case Status::Timeout: return "timeout";
        case Status::Error: return "error";
        case Status::Ok: return value ? value->str() : "error";
    }
    return "error";
}

MatrixResult run_matrix(const std::vector<NamedKb>& kbs, const std::vector<Measure>& measures,
                        const std::vector<Method>& methods, double timeout_seconds, int workers,
                        const SearchOptions& base) {
    struct Job {
        std::size_t kb;
        Measure measure;
        Method method;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < kbs.size(); ++i)
        for (auto m : measures)
            for (auto meth : methods)
                if (method_supports(meth, m)) jobs.push_back({i, m, meth});

    MatrixResult res;
    res.records.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex sink;
    auto work = [&] {
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const auto& job = jobs[j];
            BenchRecord rec;
            rec.kb_id = kbs[job.kb].id;
            rec.measure = job.measure;
            rec.method = job.method;
            auto opt = base;
            opt.sat.timeout = timeout_seconds;
            if (opt.asp) opt.asp->timeout = timeout_seconds;
            opt.deadline = Deadline::after(timeout_seconds);
            auto start = Clock::now();
            try {
                auto out = compute(job.measure, kbs[job.kb].kb, job.method, opt);
                rec.times = out.times;
                rec.solver_calls = out.solver_calls;
                if (out.timed_out) {
                    rec.status = BenchRecord::Status::Timeout;
                } else {
                    rec.value = out.value;
                }
            } catch (const std::exception& e) {
                rec.status = BenchRecord::Status::Error;
                rec.error = e.what();
            }
            rec.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
            std::lock_guard<std::mutex> lock(sink);
            res.records[j] = std::move(rec);
        }
    };
    int n = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::map<std::pair<std::string, int>, std::vector<const BenchRecord*>> cells;
    for (const auto& r : res.records)
        if (r.status == BenchRecord::Status::Ok) cells[{r.kb_id, static_cast<int>(r.measure)}].push_back(&r);
    for (const auto& [key, recs] : cells) {
        for (const auto* r : recs) {
            if (*r->value == *recs.front()->value) continue;
            res.disagreements.push_back({key.first, recs.front()->measure,
                                         std::string(method_name(recs.front()->method)) + "=" +
                                             recs.front()->value->str() + " vs " +
                                             std::string(method_name(r->method)) + "=" + r->value->str()});
        }
    }
    return res;
}

// ---------------------------------------------------------------- reports

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string num(double v) {
    std::ostringstream o;
    o << std::setprecision(6) << std::fixed << v;
    return o.str();
}

std::ofstream open_csv(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    return out;
}

}  // namespace

void emit_reports(const std::vector<BenchRecord>& records, const fs::path& out_dir, double timeout_seconds) {
    fs::create_directories(out_dir);
    {
        auto out = open_csv(out_dir / "results.csv");
        out << "kb,measure,method,value,total_seconds,encoding_seconds,cnf_seconds,solving_seconds,other_seconds,"
               "solver_calls,error\r\n";
        for (const auto& r : records)
            out << csv_field(r.kb_id) << ',' << measure_name(r.measure) << ',' << method_name(r.method) << ','
                << r.value_text() << ',' << num(r.total_seconds) << ',' << num(r.times.encoding) << ','
                << num(r.times.cnf) << ',' << num(r.times.solving) << ',' << num(r.times.other) << ','
                << r.solver_calls << ',' << csv_field(r.error) << "\r\n";
    }

    // Cells keyed by (measure, method) in order of first appearance.
    std::vector<std::pair<Measure, Method>> cells;
    for (const auto& r : records)
        if (std::find(cells.begin(), cells.end(), std::make_pair(r.measure, r.method)) == cells.end())
            cells.emplace_back(r.measure, r.method);

    auto solved = [](const BenchRecord& r) { return r.status == BenchRecord::Status::Ok; };
    {
        auto out = open_csv(out_dir / "summary.csv");
        out << "measure,method,instances,solved,timeouts,errors,cumulative_seconds\r\n";
        for (const auto& [m, meth] : cells) {
            int n = 0, ok = 0, to = 0, err = 0;
            double cum = 0;
            for (const auto& r : records) {
                if (r.measure != m || r.method != meth) continue;
                ++n;
                if (solved(r)) {
                    ++ok;
                    cum += r.total_seconds;
                } else if (r.status == BenchRecord::Status::Timeout) {
                    ++to;
                    cum += timeout_seconds;
                } else {
                    ++err;
                }
            }
            out << measure_name(m) << ',' << method_name(meth) << ',' << n << ',' << ok << ',' << to << ',' << err
                << ',' << num(cum) << "\r\n";
        }
    }

    for (const auto& [m, meth] : cells) {
        std::vector<double> times;
        for (const auto& r : records)
            if (r.measure == m && r.method == meth && solved(r)) times.push_back(r.total_seconds);
        std::sort(times.begin(), times.end());
        auto out = open_csv(out_dir / ("cactus_" + std::string(measure_name(m)) + "_" +
                                       std::string(method_name(meth)) + ".csv"));
        out << "solved,seconds,cumulative_seconds\r\n";
        double cum = 0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            cum += times[i];
            out << (i + 1) << ',' << num(times[i]) << ',' << num(cum) << "\r\n";
        }
    }

    for (std::size_t a = 0; a < cells.size(); ++a) {
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            if (cells[a].first != cells[b].first) continue;
            auto m = cells[a].first;
            auto m1 = cells[a].second, m2 = cells[b].second;
            std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> rows;
            std::vector<std::string> order;
            auto seconds = [&](const BenchRecord& r) -> std::optional<double> {
                if (solved(r)) return r.total_seconds;
                if (r.status == BenchRecord::Status::Timeout) return timeout_seconds;
                return std::nullopt;
            };
            for (const auto& r : records) {
                if (r.measure != m || (r.method != m1 && r.method != m2)) continue;
                if (!rows.count(r.kb_id)) order.push_back(r.kb_id);
                auto& row = rows[r.kb_id];
                (r.method == m1 ? row.first : row.second) = seconds(r);
            }
            auto out = open_csv(out_dir / ("scatter_" + std::string(measure_name(m)) + "_" +
                                           std::string(method_name(m1)) + "_vs_" + std::string(method_name(m2)) +
                                           ".csv"));
            out << "kb," << method_name(m1) << "_seconds," << method_name(m2) << "_seconds\r\n";
            for (const auto& id : order) {
                const auto& row = rows[id];
                if (!row.first || !row.second) continue;
                out << csv_field(id) << ',' << num(*row.first) << ',' << num(*row.second) << "\r\n";
            }
        }
    }
}

}  // namespace incmeter
