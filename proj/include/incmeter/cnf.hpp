#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "incmeter/formula.hpp"

namespace incmeter {

using Lit = int;
using Clause = std::vector<Lit>;

enum class VarKind {
    Atom,       // an atom of the input KB used as-is
    AtomTri,    // X_t, X_f, X_b
    SubVal,     // v^theta of a subformula site
    OccVar,     // X^l
    ForgetTop,  // t_{X,l}
    ForgetBot,  // f_{X,l}
    Block,      // p_{A,i}
    CopyAtom,   // X_i
    OptAtom,    // X_o
    Inv,        // inv_{X,i}
    Hit,        // hit_A
    Aux,        // Tseitin and cardinality auxiliaries
};

struct VarName {
    VarKind kind = VarKind::Aux;
    std::string atom;  // atom name, or site key for SubVal
    int index = 0;     // occurrence label, copy/block index, formula index or aux counter
    char theta = 0;    // 't', 'f', 'b' for AtomTri / SubVal

    std::string key() const;
    bool operator==(const VarName&) const = default;

    static VarName plain(std::string a) { return {VarKind::Atom, std::move(a), 0, 0}; }
    static VarName tri(std::string a, char t) { return {VarKind::AtomTri, std::move(a), 0, t}; }
    static VarName sub(std::string site, char t) { return {VarKind::SubVal, std::move(site), 0, t}; }
    static VarName occ(std::string a, int l) { return {VarKind::OccVar, std::move(a), l, 0}; }
    static VarName forget_top(std::string a, int l) { return {VarKind::ForgetTop, std::move(a), l, 0}; }
    static VarName forget_bot(std::string a, int l) { return {VarKind::ForgetBot, std::move(a), l, 0}; }
    static VarName block(int formula, int i) { return {VarKind::Block, std::to_string(formula), i, 0}; }
    static VarName copy(std::string a, int i) { return {VarKind::CopyAtom, std::move(a), i, 0}; }
    static VarName opt(std::string a) { return {VarKind::OptAtom, std::move(a), 0, 0}; }
    static VarName inv(std::string a, int i) { return {VarKind::Inv, std::move(a), i, 0}; }
    static VarName hit(int formula) { return {VarKind::Hit, "", formula, 0}; }
};

// Bijection between semantic names and solver variables 1..size().
class VarMap {
  public:
    int get_or_create(const VarName& name);
    int fresh_aux();
    int find(const VarName& name) const;  // 0 when absent
    const VarName& name(int var) const;
    int size() const { return static_cast<int>(names_.size()); }
    int count_non_aux() const;

  private:
    std::vector<VarName> names_;
    std::unordered_map<std::string, int> ids_;
    int aux_counter_ = 0;
};

struct CnfInstance {
    int num_vars = 0;
    std::vector<Clause> clauses;
    VarMap vars;
};

// Sorts, removes duplicate literals; returns false for tautologies.
bool normalize_clause(Clause& c);

// Boolean expression over solver literals; the input of the Tseitin step.
struct Expr {
    enum class Op { Lit, True, False, Not, And, Or, Iff };
    Op op = Op::True;
    Lit lit = 0;
    std::vector<Expr> kids;

    static Expr var(Lit l) { return {Op::Lit, l, {}}; }
    static Expr truth() { return {Op::True, 0, {}}; }
    static Expr falsity() { return {Op::False, 0, {}}; }
};

Expr operator!(Expr e);
Expr all_of(std::vector<Expr> kids);
Expr any_of(std::vector<Expr> kids);
Expr equiv(Expr a, Expr b);
Expr implies(Expr a, Expr b);

// Accumulates clauses over a VarMap; owns the Tseitin definitions.
class CnfBuilder {
  public:
    CnfBuilder() = default;
    explicit CnfBuilder(VarMap vars) : vars_(std::move(vars)) {}

    VarMap& vars() { return vars_; }
    const VarMap& vars() const { return vars_; }
    int var(const VarName& n) { return vars_.get_or_create(n); }

    void add_clause(Clause c);
    // Tseitin: defines every connective by an equivalence and asserts the root.
    void assert_expr(const Expr& e);
    std::size_t clause_count() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }

    CnfInstance finish() &&;

  private:
    struct Def {
        bool is_const;
        bool value;
        Lit lit;
    };
    Def define(const Expr& e);

    VarMap vars_;
    std::vector<Clause> clauses_;
};

// Expression for a KB formula with each atom X mapped through atom_var.
template <typename F>
Expr formula_expr(const Formula& f, F&& atom_var) {
    switch (f.kind) {
        case Kind::Atom: return Expr::var(atom_var(f.name));
        case Kind::Top: return Expr::truth();
        case Kind::Bottom: return Expr::falsity();
        case Kind::Not: return !formula_expr(*f.left, atom_var);
        case Kind::And: return all_of({formula_expr(*f.left, atom_var), formula_expr(*f.right, atom_var)});
        case Kind::Or: return any_of({formula_expr(*f.left, atom_var), formula_expr(*f.right, atom_var)});
        case Kind::Implies:
            return any_of({!formula_expr(*f.left, atom_var), formula_expr(*f.right, atom_var)});
        case Kind::Iff: return equiv(formula_expr(*f.left, atom_var), formula_expr(*f.right, atom_var));
    }
    return Expr::truth();
}

// Equisatisfiable CNF of f; atoms become VarKind::Atom entries of alloc.
CnfInstance tseitin(const Formula& f, VarMap alloc = {});
CnfInstance tseitin(const KnowledgeBase& kb, VarMap alloc = {});

}  // namespace incmeter
