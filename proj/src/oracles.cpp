#include "incmeter/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>

#include "incmeter/cnf.hpp"
#include "incmeter/error.hpp"

namespace incmeter {

char truth3_char(Truth3 v) {
    switch (v) {
        case Truth3::T: return 't';
        case Truth3::F: return 'f';
        case Truth3::B: return 'b';
    }
    return '?';
}

ThreeValuedInterpretation::ThreeValuedInterpretation(std::vector<std::string> atoms, std::vector<Truth3> values)
    : atoms_(std::move(atoms)), values_(std::move(values)) {
    if (atoms_.size() != values_.size()) throw Error("interpretation size mismatch");
    if (!std::is_sorted(atoms_.begin(), atoms_.end())) throw Error("interpretation atoms must be sorted");
}

Truth3 ThreeValuedInterpretation::value(std::string_view a) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || *it != a) throw Error("atom '" + std::string(a) + "' not in interpretation");
    return values_[static_cast<std::size_t>(it - atoms_.begin())];
}

std::vector<std::string> ThreeValuedInterpretation::conflictbase() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (values_[i] == Truth3::B) out.push_back(atoms_[i]);
    return out;
}

namespace {

Truth3 not3(Truth3 a) {
    if (a == Truth3::T) return Truth3::F;
    if (a == Truth3::F) return Truth3::T;
    return Truth3::B;
}

Truth3 and3(Truth3 a, Truth3 b) {
    if (a == Truth3::F || b == Truth3::F) return Truth3::F;
    if (a == Truth3::T && b == Truth3::T) return Truth3::T;
    return Truth3::B;
}

Truth3 or3(Truth3 a, Truth3 b) {
    if (a == Truth3::T || b == Truth3::T) return Truth3::T;
    if (a == Truth3::F && b == Truth3::F) return Truth3::F;
    return Truth3::B;
}

// Index-based copy of a formula for the inner loops of the oracles.
struct Compiled {
    struct Node {
        Kind kind;
        int atom;
        int left;
        int right;
    };
    std::vector<Node> nodes;
    int root = -1;
};

int compile_into(const Formula& f, const std::vector<std::string>& sig, Compiled& c) {
    Compiled::Node n{f.kind, -1, -1, -1};
    if (f.kind == Kind::Atom) {
        auto it = std::lower_bound(sig.begin(), sig.end(), f.name);
        if (it == sig.end() || *it != f.name) throw Error("atom '" + f.name + "' outside the signature");
        n.atom = static_cast<int>(it - sig.begin());
    } else if (f.kind == Kind::Not) {
        n.left = compile_into(*f.left, sig, c);
    } else if (f.is_binary()) {
        n.left = compile_into(*f.left, sig, c);
        n.right = compile_into(*f.right, sig, c);
    }
    c.nodes.push_back(n);
    return static_cast<int>(c.nodes.size()) - 1;
}

Compiled compile(const Formula& f, const std::vector<std::string>& sig) {
    Compiled c;
    c.root = compile_into(f, sig, c);
    return c;
}

bool ev2(const Compiled& c, int i, std::uint64_t mask) {
    const auto& n = c.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
        case Kind::Atom: return (mask >> n.atom) & 1U;
        case Kind::Top: return true;
        case Kind::Bottom: return false;
        case Kind::Not: return !ev2(c, n.left, mask);
        case Kind::And: return ev2(c, n.left, mask) && ev2(c, n.right, mask);
        case Kind::Or: return ev2(c, n.left, mask) || ev2(c, n.right, mask);
        case Kind::Implies: return !ev2(c, n.left, mask) || ev2(c, n.right, mask);
        case Kind::Iff: return ev2(c, n.left, mask) == ev2(c, n.right, mask);
    }
    return false;
}

bool ev2(const Compiled& c, std::uint64_t mask) { return ev2(c, c.root, mask); }

Truth3 ev3(const Compiled& c, int i, const std::vector<Truth3>& w) {
    const auto& n = c.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
        case Kind::Atom: return w[static_cast<std::size_t>(n.atom)];
        case Kind::Top: return Truth3::T;
        case Kind::Bottom: return Truth3::F;
        case Kind::Not: return not3(ev3(c, n.left, w));
        case Kind::And: return and3(ev3(c, n.left, w), ev3(c, n.right, w));
        case Kind::Or: return or3(ev3(c, n.left, w), ev3(c, n.right, w));
        default: throw Error("eval3 needs a formula over !, &&, ||");
    }
}

std::vector<Compiled> compile_all(const KnowledgeBase& kb, const std::vector<std::string>& sig) {
    std::vector<Compiled> out;
    for (const auto& f : kb.formulas) out.push_back(compile(*f, sig));
    return out;
}

void require_atoms(const std::vector<std::string>& sig, int cap, const char* what) {
    if (static_cast<int>(sig.size()) > cap)
        throw CapExceeded(std::string(what) + ": signature of " + std::to_string(sig.size()) +
                          " atoms exceeds cap " + std::to_string(cap));
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace

Truth3 eval3(const Formula& f, const ThreeValuedInterpretation& w) {
    switch (f.kind) {
        case Kind::Atom: return w.value(f.name);
        case Kind::Top: return Truth3::T;
        case Kind::Bottom: return Truth3::F;
        case Kind::Not: return not3(eval3(*f.left, w));
        case Kind::And: return and3(eval3(*f.left, w), eval3(*f.right, w));
        case Kind::Or: return or3(eval3(*f.left, w), eval3(*f.right, w));
        default: throw Error("eval3 needs a formula over !, &&, || (apply reduce_connectives)");
    }
}

// ---------------------------------------------------------------- contension

Value contension_oracle(const KnowledgeBase& kb) {
    auto sig = signature(kb);
    require_atoms(sig, kContensionAtomCap, "contension oracle");
    std::vector<Compiled> fs;
    for (const auto& f : kb.formulas) fs.push_back(compile(*reduce_connectives(f), sig));
    const std::size_t n = sig.size();
    std::vector<Truth3> w(n, Truth3::T);
    std::int64_t best = kInf;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::int64_t bs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = static_cast<Truth3>(c % 3);
            if (w[i] == Truth3::B) ++bs;
            c /= 3;
        }
        if (bs >= best) continue;
        bool model = std::all_of(fs.begin(), fs.end(), [&](const Compiled& f) { return ev3(f, f.root, w) != Truth3::F; });
        if (model) best = bs;
    }
    return best == kInf ? Value::infinity() : Value::of(best);
}

// ---------------------------------------------------------------- forgetting

FormulaPtr forget(const FormulaPtr& f, const AtomOccurrence& occ, ForgetMode mode) {
    auto node = node_at(f, occ.path);
    if (node->kind != Kind::Atom || node->name != occ.atom)
        throw Error("no occurrence of '" + occ.atom + "' at path '" + occ.path + "'");
    auto with_top = [&] { return replace_at(f, occ.path, top()); };
    auto with_bottom = [&] { return replace_at(f, occ.path, bottom()); };
    switch (mode) {
        case ForgetMode::Top: return with_top();
        case ForgetMode::Bottom: return with_bottom();
        case ForgetMode::Both: return disj(with_top(), with_bottom());
    }
    return f;
}

namespace {

// Minimal number of atom leaves whose value must be overridden so that node
// evaluates to `want` under mask.
std::int64_t override_cost(const Compiled& c, int i, bool want, std::uint64_t mask) {
    const auto& n = c.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
        case Kind::Atom: return (((mask >> n.atom) & 1U) != 0) == want ? 0 : 1;
        case Kind::Top: return want ? 0 : kInf;
        case Kind::Bottom: return want ? kInf : 0;
        case Kind::Not: return override_cost(c, n.left, !want, mask);
        case Kind::And:
        case Kind::Or: {
            auto a = override_cost(c, n.left, want, mask);
            auto b = override_cost(c, n.right, want, mask);
            bool needs_both = (n.kind == Kind::And) == want;
            return needs_both ? std::min(kInf, a + b) : std::min(a, b);
        }
        default: throw Error("forgetting oracle needs a formula over !, &&, ||");
    }
}

}  // namespace

Value forgetting_oracle(const KnowledgeBase& kb) {
    auto sig = signature(kb);
    require_atoms(sig, kForgettingAtomCap, "forgetting oracle");
    std::vector<Compiled> fs;
    for (const auto& f : kb.formulas) fs.push_back(compile(*reduce_connectives(f), sig));
    std::int64_t best = kInf;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sig.size()); ++m) {
        std::int64_t total = 0;
        for (const auto& f : fs) total = std::min(kInf, total + override_cost(f, f.root, true, m));
        best = std::min(best, total);
    }
    return best >= kInf ? Value::infinity() : Value::of(best);
}

// ---------------------------------------------------------------- hitting set

Value hs_oracle(const KnowledgeBase& kb) {
    if (kb.empty()) return Value::of(0);
    auto sig = signature(kb);
    require_atoms(sig, kHittingSetAtomCap, "hitting-set oracle");
    if (static_cast<int>(kb.size()) > kHittingSetFormulaCap)
        throw CapExceeded("hitting-set oracle: more than " + std::to_string(kHittingSetFormulaCap) + " formulas");
    auto fs = compile_all(kb, sig);
    const std::size_t k = fs.size();
    const std::uint32_t full = (1U << k) - 1;
    // sat_block[s]: some interpretation satisfies every formula in s.
    std::vector<char> sat_block(full + 1, 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sig.size()); ++m) {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (ev2(fs[i], m)) s |= 1U << i;
        sat_block[s] = 1;
    }
    for (std::uint32_t s = full; s > 0; --s)
        if (sat_block[s])
            for (std::size_t i = 0; i < k; ++i)
                if (s & (1U << i)) sat_block[s & ~(1U << i)] = 1;
    for (std::size_t i = 0; i < k; ++i)
        if (!sat_block[1U << i]) return Value::infinity();
    // Minimal number of satisfiable blocks covering each subset.
    std::vector<int> blocks(full + 1, std::numeric_limits<int>::max());
    blocks[0] = 0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        std::uint32_t low = s & (~s + 1);
        std::uint32_t rest = s & ~low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t block = sub | low;
            if (sat_block[block] && blocks[s & ~block] != std::numeric_limits<int>::max())
                blocks[s] = std::min(blocks[s], blocks[s & ~block] + 1);
            if (sub == 0) break;
        }
    }
    return Value::of(blocks[full] - 1);
}

// ---------------------------------------------------------------- distances

int dalal(const Interpretation& a, const Interpretation& b) {
    if (a.atoms() != b.atoms()) throw Error("dalal distance over different signatures");
    int d = 0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        if (a.values()[i] != b.values()[i]) ++d;
    return d;
}

Value dalal(const std::vector<Interpretation>& models, const Interpretation& b) {
    if (models.empty()) return Value::infinity();
    int best = std::numeric_limits<int>::max();
    for (const auto& m : models) best = std::min(best, dalal(m, b));
    return Value::of(best);
}

Value distance_oracle(const KnowledgeBase& kb, DistanceKind kind) {
    if (kb.empty()) return Value::of(0);
    auto sig = signature(kb);
    require_atoms(sig, kDistanceAtomCap, "distance oracle");
    std::vector<std::vector<Interpretation>> mods;
    for (const auto& f : kb.formulas) mods.push_back(enumerate_models(f, sig, kDistanceAtomCap));
    Value best = Value::infinity();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sig.size()); ++m) {
        auto w = Interpretation::from_mask(sig, m);
        std::int64_t agg = 0;
        bool inf = false;
        for (const auto& mod : mods) {
            auto d = dalal(mod, w);
            switch (kind) {
                case DistanceKind::Max:
                    if (d.is_infinite()) inf = true;
                    else agg = std::max(agg, d.get());
                    break;
                case DistanceKind::Sum:
                    if (d.is_infinite()) inf = true;
                    else agg += d.get();
                    break;
                case DistanceKind::Hit:
                    if (Value::of(0) < d) ++agg;
                    break;
            }
        }
        Value v = inf ? Value::infinity() : Value::of(agg);
        if (v < best) best = v;
    }
    return best;
}

Value oracle(Measure m, const KnowledgeBase& kb) {
    switch (m) {
        case Measure::Contension: return contension_oracle(kb);
        case Measure::Forgetting: return forgetting_oracle(kb);
        case Measure::HittingSet: return hs_oracle(kb);
        case Measure::MaxDistance: return distance_oracle(kb, DistanceKind::Max);
        case Measure::SumDistance: return distance_oracle(kb, DistanceKind::Sum);
        case Measure::HitDistance: return distance_oracle(kb, DistanceKind::Hit);
    }
    throw Error("unknown measure");
}

// ---------------------------------------------------------------- naive baselines

namespace {

void cnf_rec(const Formula& f, bool pos, std::size_t cap, std::vector<NamedClause>& out) {
    switch (f.kind) {
        case Kind::Atom: out.push_back({{f.name, pos}}); return;
        case Kind::Top:
            if (!pos) out.push_back({});
            return;
        case Kind::Bottom:
            if (pos) out.push_back({});
            return;
        case Kind::Not: cnf_rec(*f.left, !pos, cap, out); return;
        case Kind::And:
        case Kind::Or: {
            bool conjunctive = (f.kind == Kind::And) == pos;
            if (conjunctive) {
                cnf_rec(*f.left, pos, cap, out);
                cnf_rec(*f.right, pos, cap, out);
            } else {
                std::vector<NamedClause> a, b;
                cnf_rec(*f.left, pos, cap, a);
                cnf_rec(*f.right, pos, cap, b);
                if (a.size() * b.size() > cap) throw CapExceeded("distributive CNF exceeds clause cap");
                for (const auto& ca : a)
                    for (const auto& cb : b) {
                        NamedClause c = ca;
                        c.insert(c.end(), cb.begin(), cb.end());
                        std::sort(c.begin(), c.end());
                        c.erase(std::unique(c.begin(), c.end()), c.end());
                        bool taut = false;
                        for (std::size_t i = 1; i < c.size(); ++i)
                            if (c[i].first == c[i - 1].first) taut = true;
                        if (!taut) out.push_back(std::move(c));
                    }
            }
            if (out.size() > cap) throw CapExceeded("distributive CNF exceeds clause cap");
            return;
        }
        default: throw Error("distributive CNF needs a formula over !, &&, ||");
    }
}

class NaiveRunner {
  public:
    NaiveRunner(const BackendConfig& cfg, Deadline deadline, NaiveStats& stats)
        : cfg_(cfg), deadline_(deadline), stats_(stats) {}

    bool sat(const CnfInstance& cnf) {
        if (deadline_.expired()) throw TimeoutError("naive baseline timed out");
        ++stats_.sat_checks;
        auto r = solve(cnf, cfg_, deadline_);
        if (r.status == SolverResult::Status::Timeout) throw TimeoutError("naive baseline timed out");
        return r.sat();
    }

    bool sat(const KnowledgeBase& kb) { return sat(tseitin(kb)); }

    bool sat(const std::vector<NamedClause>& clauses) {
        CnfBuilder b;
        for (const auto& c : clauses) {
            if (c.empty()) return false;
            Clause lits;
            for (const auto& [a, pos] : c) {
                int v = b.var(VarName::plain(a));
                lits.push_back(pos ? v : -v);
            }
            b.add_clause(std::move(lits));
        }
        return sat(std::move(b).finish());
    }

  private:
    BackendConfig cfg_;
    Deadline deadline_;
    NaiveStats& stats_;
};

// Calls fn on each k-subset of {0..n-1} in lexicographic order until it returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return false;
    for (;;) {
        if (fn(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

Value naive_contension(const KnowledgeBase& kb, NaiveRunner& run) {
    std::vector<NamedClause> cnf;
    for (const auto& f : kb.formulas) {
        auto part = distributive_cnf(*reduce_connectives(f));
        cnf.insert(cnf.end(), part.begin(), part.end());
    }
    if (run.sat(cnf)) return Value::of(0);
    std::set<std::string> atom_set;
    for (const auto& c : cnf)
        for (const auto& l : c) atom_set.insert(l.first);
    std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
    const int n = static_cast<int>(atoms.size());
    for (int k = 1; k <= n; ++k) {
        bool found = for_each_subset(n, k, [&](const std::vector<int>& idx) {
            std::set<std::string> removed;
            for (int i : idx) removed.insert(atoms[static_cast<std::size_t>(i)]);
            std::vector<NamedClause> rest;
            for (const auto& c : cnf) {
                bool touches = std::any_of(c.begin(), c.end(), [&](const auto& l) { return removed.count(l.first) > 0; });
                if (!touches) rest.push_back(c);
            }
            return run.sat(rest);
        });
        if (found) return Value::of(k);
    }
    return Value::infinity();
}

// kb is reduced and constant-folded; folding only drops occurrences whose
// value cannot matter.
Value naive_forgetting(const KnowledgeBase& kb, NaiveRunner& run) {
    if (run.sat(kb)) return Value::of(0);
    // A folded falsum has no occurrences left to substitute.
    for (const auto& f : kb.formulas)
        if (f->kind == Kind::Bottom) return Value::infinity();
    auto occs = label_occurrences(kb);
    const int n = static_cast<int>(occs.size());
    for (int k = 1; k <= n; ++k) {
        bool found = for_each_subset(n, k, [&](const std::vector<int>& idx) {
            for (std::uint32_t choice = 0; choice < (1U << k); ++choice) {
                KnowledgeBase sub = kb;
                for (int j = 0; j < k; ++j) {
                    const auto& o = occs[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
                    auto& f = sub.formulas[o.formula];
                    f = replace_at(f, o.path, (choice >> j) & 1U ? bottom() : top());
                }
                if (run.sat(sub)) return true;
            }
            return false;
        });
        if (found) return Value::of(k);
    }
    return Value::infinity();
}

Value naive_hs(const KnowledgeBase& kb) {
    if (kb.empty()) return Value::of(0);
    auto sig = signature(kb);
    require_atoms(sig, kHittingSetAtomCap, "naive hitting set");
    auto fs = compile_all(kb, sig);
    const std::size_t k = fs.size();
    // Coverage mask of each interpretation; members covering nothing never help.
    std::vector<std::uint32_t> cover;
    std::uint32_t reachable = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sig.size()); ++m) {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (ev2(fs[i], m)) s |= 1U << i;
        if (s) cover.push_back(s);
        reachable |= s;
    }
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
    // Some formula has no model: no tuple of any size can hit it.
    if (reachable != full) return Value::infinity();
    const int n = static_cast<int>(cover.size());
    for (int size = 1; size <= static_cast<int>(k); ++size) {
        bool found = for_each_subset(n, size, [&](const std::vector<int>& idx) {
            std::uint32_t s = 0;
            for (int i : idx) s |= cover[static_cast<std::size_t>(i)];
            return s == full;
        });
        if (found) return Value::of(size - 1);
    }
    return Value::infinity();
}

Value naive_distance(const KnowledgeBase& kb, DistanceKind kind) {
    if (kb.empty()) return Value::of(0);
    auto sig = signature(kb);
    require_atoms(sig, kDistanceAtomCap, "naive distance");
    auto fs = compile_all(kb, sig);
    const int n = static_cast<int>(sig.size());
    Value best = Value::infinity();
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        std::int64_t agg = 0;
        bool inf = false;
        for (const auto& f : fs) {
            // Grow a Hamming ball around w until it contains a model.
            int dist = -1;
            for (int r = 0; r <= n && dist < 0; ++r) {
                bool hit = for_each_subset(n, r, [&](const std::vector<int>& flips) {
                    std::uint64_t v = w;
                    for (int i : flips) v ^= std::uint64_t{1} << i;
                    return ev2(f, v);
                });
                if (hit) dist = r;
            }
            if (kind == DistanceKind::Hit) {
                if (dist != 0) ++agg;
            } else if (dist < 0) {
                inf = true;
            } else {
                agg = kind == DistanceKind::Max ? std::max<std::int64_t>(agg, dist) : agg + dist;
            }
        }
        Value v = inf ? Value::infinity() : Value::of(agg);
        if (v < best) best = v;
    }
    return best;
}

}  // namespace

std::vector<NamedClause> distributive_cnf(const Formula& f, std::size_t clause_cap) {
    std::vector<NamedClause> out;
    cnf_rec(f, true, clause_cap, out);
    return out;
}

Value naive_measure(const KnowledgeBase& kb, Measure m, const BackendConfig& cfg, Deadline deadline,
                    NaiveStats& stats) {
    if (kb.empty()) return Value::of(0);
    NaiveRunner run(cfg, deadline, stats);
    switch (m) {
        case Measure::Contension: return naive_contension(kb, run);
        case Measure::Forgetting: return naive_forgetting(prepare(kb), run);
        case Measure::HittingSet: return naive_hs(kb);
        case Measure::MaxDistance: return naive_distance(kb, DistanceKind::Max);
        case Measure::SumDistance: return naive_distance(kb, DistanceKind::Sum);
        case Measure::HitDistance: return naive_distance(kb, DistanceKind::Hit);
    }
    throw Error("unknown measure");
}

Value naive_measure(const KnowledgeBase& kb, Measure m, const BackendConfig& cfg, Deadline deadline) {
    NaiveStats stats;
    return naive_measure(kb, m, cfg, deadline, stats);
}

}  // namespace incmeter
