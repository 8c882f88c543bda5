// Conflict-driven clause learning: two watched literals, first-UIP learning
// with local minimization, VSIDS ordering, phase saving and Luby restarts.

#include <algorithm>
#include <cstdint>
#include <random>

#include "incmeter/error.hpp"
#include "incmeter/solver.hpp"

namespace incmeter {

namespace {

inline int code(Lit l) { return l > 0 ? 2 * l : 2 * (-l) + 1; }
inline int var_of(int c) { return c >> 1; }

double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

class Cdcl {
  public:
    Cdcl(int n, std::uint64_t seed)
        : n_(n), assign_(static_cast<std::size_t>(n + 1), -1), level_(static_cast<std::size_t>(n + 1), 0),
          reason_(static_cast<std::size_t>(n + 1), -1), phase_(static_cast<std::size_t>(n + 1), 0),
          activity_(static_cast<std::size_t>(n + 1), 0.0), seen_(static_cast<std::size_t>(n + 1), 0),
          heap_pos_(static_cast<std::size_t>(n + 1), -1), watches_(static_cast<std::size_t>(2 * n + 2)) {
        if (seed != 0) {
            // Tiny perturbations only reorder ties; no effect under seed 0.
            std::mt19937_64 rng(seed);
            for (int v = 1; v <= n_; ++v) activity_[v] = static_cast<double>(rng() % 1024) * 1e-9;
        }
        for (int v = n_; v >= 1; --v) heap_insert(v);
    }

    void add_clause(const Clause& c) {
        if (unsat_) return;
        std::vector<int> lits;
        for (Lit l : c) {
            if (std::abs(l) > n_) throw Error("literal out of range");
            lits.push_back(code(l));
        }
        // Clauses arrive normalized; drop those already satisfied at level 0.
        std::vector<int> kept;
        for (int p : lits) {
            int v = value(p);
            if (v == 1) return;
            if (v == -1) kept.push_back(p);
        }
        if (kept.empty()) {
            unsat_ = true;
            return;
        }
        if (kept.size() == 1) {
            enqueue(kept[0], -1);
            if (propagate() >= 0) unsat_ = true;
            return;
        }
        attach(std::move(kept));
    }

    SolverResult::Status solve(const Deadline& deadline) {
        if (unsat_) return SolverResult::Status::Unsat;
        int restart_no = 0;
        std::uint64_t ticks = 0;
        for (;;) {
            long budget = static_cast<long>(luby(2, restart_no++) * 100);
            long conflicts = 0;
            for (;;) {
                if ((++ticks & 255) == 0 && deadline.expired()) return SolverResult::Status::Timeout;
                int confl = propagate();
                if (confl >= 0) {
                    ++conflicts;
                    if (decision_level() == 0) return SolverResult::Status::Unsat;
                    std::vector<int> learnt;
                    int back = analyze(confl, learnt);
                    backtrack(back);
                    if (learnt.size() == 1) {
                        enqueue(learnt[0], -1);
                    } else {
                        int ci = attach(learnt);
                        enqueue(learnt[0], ci);
                    }
                    decay();
                    continue;
                }
                if (conflicts >= budget) {
                    backtrack(0);
                    break;
                }
                int v = pick_branch();
                if (v == 0) {
                    model_.assign(static_cast<std::size_t>(n_ + 1), false);
                    for (int u = 1; u <= n_; ++u) model_[u] = assign_[u] == 1;
                    return SolverResult::Status::Sat;
                }
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                enqueue(2 * v + (phase_[v] ? 0 : 1), -1);
            }
        }
    }

    const std::vector<bool>& model() const { return model_; }

  private:
    // 1 true, 0 false, -1 unassigned.
    int value(int p) const {
        int a = assign_[var_of(p)];
        if (a < 0) return -1;
        return (p & 1) ? 1 - a : a;
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    int attach(std::vector<int> lits) {
        int ci = static_cast<int>(clauses_.size());
        watches_[lits[0]].push_back(ci);
        watches_[lits[1]].push_back(ci);
        clauses_.push_back(std::move(lits));
        return ci;
    }

    void enqueue(int p, int reason) {
        int v = var_of(p);
        assign_[v] = (p & 1) ? 0 : 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(p);
    }

    int propagate() {
        while (qhead_ < trail_.size()) {
            int p = trail_[qhead_++];
            int false_lit = p ^ 1;
            auto& ws = watches_[false_lit];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                int ci = ws[i++];
                auto& c = clauses_[ci];
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                if (value(c[0]) == 1) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = ci;
                if (value(c[0]) == 0) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(j);
        }
        return -1;
    }

    int analyze(int confl, std::vector<int>& out) {
        out.assign(1, 0);
        int path = 0;
        int p = -1;
        int index = static_cast<int>(trail_.size()) - 1;
        do {
            const auto& c = clauses_[confl];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
                int q = c[k];
                int v = var_of(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump(v);
                    if (level_[v] >= decision_level())
                        ++path;
                    else
                        out.push_back(q);
                }
            }
            while (!seen_[var_of(trail_[index])]) --index;
            p = trail_[index--];
            confl = reason_[var_of(p)];
            seen_[var_of(p)] = 0;
            --path;
        } while (path > 0);
        out[0] = p ^ 1;

        // Drop literals implied by the rest of the clause through their reason.
        std::vector<int> to_clear(out.begin() + 1, out.end());
        std::size_t keep = 1;
        for (std::size_t k = 1; k < out.size(); ++k) {
            int v = var_of(out[k]);
            int r = reason_[v];
            bool redundant = r >= 0;
            if (redundant) {
                const auto& rc = clauses_[r];
                for (std::size_t m = 1; m < rc.size(); ++m) {
                    int u = var_of(rc[m]);
                    if (!seen_[u] && level_[u] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant) out[keep++] = out[k];
        }
        out.resize(keep);
        for (int q : to_clear) seen_[var_of(q)] = 0;

        int back = 0;
        if (out.size() > 1) {
            std::size_t best = 1;
            for (std::size_t k = 2; k < out.size(); ++k)
                if (level_[var_of(out[k])] > level_[var_of(out[best])]) best = k;
            std::swap(out[1], out[best]);
            back = level_[var_of(out[1])];
        }
        return back;
    }

    void backtrack(int lvl) {
        if (decision_level() <= lvl) return;
        auto lim = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
        for (std::size_t k = trail_.size(); k-- > lim;) {
            int v = var_of(trail_[k]);
            phase_[v] = assign_[v] == 1;
            assign_[v] = -1;
            reason_[v] = -1;
            if (heap_pos_[v] < 0) heap_insert(v);
        }
        trail_.resize(lim);
        trail_lim_.resize(static_cast<std::size_t>(lvl));
        qhead_ = trail_.size();
    }

    int pick_branch() {
        while (!heap_.empty()) {
            int v = heap_pop();
            if (assign_[v] < 0) return v;
        }
        return 0;
    }

    void bump(int v) {
        activity_[v] += inc_;
        if (activity_[v] > 1e100) {
            for (int u = 1; u <= n_; ++u) activity_[u] *= 1e-100;
            inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) sift_up(heap_pos_[v]);
    }

    void decay() { inc_ /= 0.95; }

    // Max-heap on activity; ties go to the smaller variable index.
    bool before(int a, int b) const {
        return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
    }
    void heap_insert(int v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        sift_up(heap_pos_[v]);
    }
    int heap_pop() {
        int top = heap_[0];
        heap_pos_[top] = -1;
        int last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_pos_[last] = 0;
            sift_down(0);
        }
        return top;
    }
    void sift_up(int i) {
        int v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!before(v, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    void sift_down(int i) {
        int v = heap_[i];
        int n = static_cast<int>(heap_.size());
        for (;;) {
            int child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
            if (!before(heap_[child], v)) break;
            heap_[i] = heap_[child];
            heap_pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    int n_;
    bool unsat_ = false;
    std::vector<int> assign_, level_, reason_;
    std::vector<char> phase_;
    std::vector<double> activity_;
    std::vector<char> seen_;
    std::vector<int> heap_, heap_pos_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_, trail_lim_;
    std::size_t qhead_ = 0;
    double inc_ = 1;
    std::vector<bool> model_;
};

}  // namespace

SolverResult solve_internal(const CnfInstance& cnf, std::uint64_t seed, Deadline deadline) {
    auto start = Clock::now();
    SolverResult res;
    Cdcl s(cnf.num_vars, seed);
    bool empty_clause = false;
    for (const auto& c : cnf.clauses) {
        if (c.empty()) empty_clause = true;
        else s.add_clause(c);
    }
    res.status = empty_clause ? SolverResult::Status::Unsat : s.solve(deadline);
    if (res.sat()) {
        res.model = s.model();
        if (!satisfies(res.model, cnf.clauses)) throw Error("internal solver returned a non-model");
    }
    res.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

}  // namespace incmeter
