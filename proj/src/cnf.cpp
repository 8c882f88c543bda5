#include "incmeter/cnf.hpp"

#include <algorithm>
#include <cstdlib>

#include "incmeter/error.hpp"

namespace incmeter {

std::string VarName::key() const {
    std::string idx = std::to_string(index);
    switch (kind) {
        case VarKind::Atom: return atom;
        case VarKind::AtomTri: return atom + "_" + theta;
        case VarKind::SubVal: return std::string("v^") + theta + "[" + atom + "]";
        case VarKind::OccVar: return atom + "^" + idx;
        case VarKind::ForgetTop: return "t_{" + atom + "," + idx + "}";
        case VarKind::ForgetBot: return "f_{" + atom + "," + idx + "}";
        case VarKind::Block: return "p_{A" + atom + "," + idx + "}";
        case VarKind::CopyAtom: return atom + "_" + idx;
        case VarKind::OptAtom: return atom + "_o";
        case VarKind::Inv: return "inv_{" + atom + "," + idx + "}";
        case VarKind::Hit: return "hit_A" + idx;
        case VarKind::Aux: return "aux#" + idx;
    }
    return "?";
}

namespace {

// Kind prefix keeps e.g. an input atom named "x_1" apart from copy 1 of x.
std::string id_key(const VarName& n) { return std::to_string(static_cast<int>(n.kind)) + "|" + n.key(); }

}  // namespace

int VarMap::get_or_create(const VarName& name) {
    auto k = id_key(name);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    names_.push_back(name);
    int id = static_cast<int>(names_.size());
    ids_.emplace(std::move(k), id);
    return id;
}

int VarMap::fresh_aux() {
    VarName n;
    n.kind = VarKind::Aux;
    n.index = ++aux_counter_;
    return get_or_create(n);
}

int VarMap::find(const VarName& name) const {
    auto it = ids_.find(id_key(name));
    return it == ids_.end() ? 0 : it->second;
}

const VarName& VarMap::name(int var) const {
    if (var < 1 || var > size()) throw Error("variable " + std::to_string(var) + " has no name");
    return names_[static_cast<std::size_t>(var - 1)];
}

int VarMap::count_non_aux() const {
    return static_cast<int>(std::count_if(names_.begin(), names_.end(),
                                          [](const VarName& n) { return n.kind != VarKind::Aux; }));
}

bool normalize_clause(Clause& c) {
    std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
        int va = std::abs(a), vb = std::abs(b);
        return va != vb ? va < vb : a < b;
    });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] == -c[i - 1]) return false;
    return true;
}

// ---------------------------------------------------------------- expressions

Expr operator!(Expr e) {
    switch (e.op) {
        case Expr::Op::True: return Expr::falsity();
        case Expr::Op::False: return Expr::truth();
        case Expr::Op::Lit: return Expr::var(-e.lit);
        case Expr::Op::Not: return std::move(e.kids.front());
        default: {
            Expr n{Expr::Op::Not, 0, {}};
            n.kids.push_back(std::move(e));
            return n;
        }
    }
}

Expr all_of(std::vector<Expr> kids) { return {Expr::Op::And, 0, std::move(kids)}; }
Expr any_of(std::vector<Expr> kids) { return {Expr::Op::Or, 0, std::move(kids)}; }
Expr equiv(Expr a, Expr b) {
    Expr e{Expr::Op::Iff, 0, {}};
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}
Expr implies(Expr a, Expr b) { return any_of({!std::move(a), std::move(b)}); }

// ---------------------------------------------------------------- Tseitin

void CnfBuilder::add_clause(Clause c) {
    if (c.empty()) throw Error("empty clause");
    if (normalize_clause(c)) clauses_.push_back(std::move(c));
}

CnfBuilder::Def CnfBuilder::define(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op) {
        case Op::Lit: return {false, false, e.lit};
        case Op::True: return {true, true, 0};
        case Op::False: return {true, false, 0};
        case Op::Not: {
            auto d = define(e.kids.front());
            if (d.is_const) return {true, !d.value, 0};
            return {false, false, -d.lit};
        }
        case Op::And:
        case Op::Or: {
            bool is_and = e.op == Op::And;
            std::vector<Lit> lits;
            for (const auto& k : e.kids) {
                auto d = define(k);
                if (d.is_const) {
                    // Absorbing constant decides the whole node; the neutral one drops out.
                    if (d.value != is_and) return {true, d.value, 0};
                    continue;
                }
                lits.push_back(d.lit);
            }
            if (lits.empty()) return {true, is_and, 0};
            if (lits.size() == 1) return {false, false, lits.front()};
            Lit x = vars_.fresh_aux();
            Clause big{is_and ? x : -x};
            for (Lit l : lits) {
                if (is_and) {
                    add_clause({-x, l});
                    big.push_back(-l);
                } else {
                    add_clause({x, -l});
                    big.push_back(l);
                }
            }
            add_clause(std::move(big));
            return {false, false, x};
        }
        case Op::Iff: {
            auto a = define(e.kids[0]);
            auto b = define(e.kids[1]);
            if (a.is_const && b.is_const) return {true, a.value == b.value, 0};
            if (a.is_const) return a.value ? b : Def{false, false, -b.lit};
            if (b.is_const) return b.value ? a : Def{false, false, -a.lit};
            Lit x = vars_.fresh_aux();
            add_clause({-x, -a.lit, b.lit});
            add_clause({-x, a.lit, -b.lit});
            add_clause({x, a.lit, b.lit});
            add_clause({x, -a.lit, -b.lit});
            return {false, false, x};
        }
    }
    return {true, true, 0};
}

void CnfBuilder::assert_expr(const Expr& e) {
    using Op = Expr::Op;
    // Top-level conjunctions and clauses need no definition variable.
    if (e.op == Op::And) {
        for (const auto& k : e.kids) assert_expr(k);
        return;
    }
    if (e.op == Op::Or) {
        Clause c;
        for (const auto& k : e.kids) {
            auto d = define(k);
            if (d.is_const) {
                if (d.value) return;
                continue;
            }
            c.push_back(d.lit);
        }
        if (c.empty()) {
            Lit x = vars_.fresh_aux();
            add_clause({x});
            add_clause({-x});
            return;
        }
        add_clause(std::move(c));
        return;
    }
    if (e.op == Op::Iff && e.kids.size() == 2) {
        auto a = define(e.kids[0]);
        auto b = define(e.kids[1]);
        if (!a.is_const && !b.is_const) {
            add_clause({-a.lit, b.lit});
            add_clause({a.lit, -b.lit});
        } else if (a.is_const && b.is_const) {
            if (a.value != b.value) assert_expr(Expr::falsity());
        } else {
            const auto& c = a.is_const ? a : b;
            Lit l = a.is_const ? b.lit : a.lit;
            add_clause({c.value ? l : -l});
        }
        return;
    }
    auto d = define(e);
    if (d.is_const) {
        if (!d.value) {
            Lit x = vars_.fresh_aux();
            add_clause({x});
            add_clause({-x});
        }
        return;
    }
    add_clause({d.lit});
}

CnfInstance CnfBuilder::finish() && {
    CnfInstance out;
    out.num_vars = vars_.size();
    out.clauses = std::move(clauses_);
    out.vars = std::move(vars_);
    return out;
}

CnfInstance tseitin(const Formula& f, VarMap alloc) {
    CnfBuilder b(std::move(alloc));
    b.assert_expr(formula_expr(f, [&](const std::string& a) { return b.var(VarName::plain(a)); }));
    return std::move(b).finish();
}

CnfInstance tseitin(const KnowledgeBase& kb, VarMap alloc) {
    CnfBuilder b(std::move(alloc));
    for (const auto& f : kb.formulas)
        b.assert_expr(formula_expr(*f, [&](const std::string& a) { return b.var(VarName::plain(a)); }));
    return std::move(b).finish();
}

}  // namespace incmeter
