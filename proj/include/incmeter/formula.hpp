#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace incmeter {

enum class Kind { Atom, Top, Bottom, Not, And, Or, Implies, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Kind kind;
    std::string name;  // Atom only
    FormulaPtr left;   // Not uses left
    FormulaPtr right;

    bool is_binary() const;
};

FormulaPtr atom(std::string name);
FormulaPtr top();
FormulaPtr bottom();
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);

bool structurally_equal(const Formula& a, const Formula& b);
bool valid_atom_name(std::string_view name);

// Prints in the KB text syntax with only the parentheses the parser needs.
std::string to_string(const Formula& f);

struct KnowledgeBase {
    std::vector<FormulaPtr> formulas;

    std::size_t size() const { return formulas.size(); }
    bool empty() const { return formulas.empty(); }
};

KnowledgeBase parse_kb(std::string_view text);
FormulaPtr parse_formula(std::string_view text);
std::string to_string(const KnowledgeBase& kb);
bool structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b);

std::vector<std::string> signature(const Formula& f);
std::vector<std::string> signature(const KnowledgeBase& kb);

// Path from a formula root: 'l' / 'r' select binary children, 'n' the negated child.
struct SubformulaSite {
    std::size_t formula;
    std::string path;
    FormulaPtr node;
};

std::vector<SubformulaSite> subformulas(const KnowledgeBase& kb);

struct AtomOccurrence {
    std::string atom;
    int label;
    std::size_t formula;
    std::string path;
};

std::size_t count_occurrences(std::string_view atom, const Formula& f);
std::size_t count_occurrences(std::string_view atom, const KnowledgeBase& kb);
std::vector<AtomOccurrence> label_occurrences(const KnowledgeBase& kb);

FormulaPtr node_at(const FormulaPtr& root, std::string_view path);
FormulaPtr replace_at(const FormulaPtr& root, std::string_view path, FormulaPtr replacement);

// Two-valued interpretation over an explicit, sorted signature.
class Interpretation {
  public:
    Interpretation() = default;
    Interpretation(std::vector<std::string> atoms, std::vector<bool> values);
    // Bit i of mask gives the value of atoms[i].
    static Interpretation from_mask(const std::vector<std::string>& atoms, unsigned long long mask);

    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<bool>& values() const { return values_; }
    bool value(std::string_view atom) const;
    bool has(std::string_view atom) const;
    void set(std::string_view atom, bool v);
    bool operator==(const Interpretation& o) const = default;

  private:
    std::vector<std::string> atoms_;
    std::vector<bool> values_;
};

bool eval2(const Formula& f, const Interpretation& w);
bool eval2(const KnowledgeBase& kb, const Interpretation& w);

std::vector<Interpretation> enumerate_models(const KnowledgeBase& kb, int cap = 20);
std::vector<Interpretation> enumerate_models(const FormulaPtr& f, const std::vector<std::string>& sig,
                                             int cap = 20);

FormulaPtr reduce_connectives(const FormulaPtr& f);
FormulaPtr fold_constants(const FormulaPtr& f);
bool has_constants(const Formula& f);

// Connective reduction followed by constant folding, formula by formula.
KnowledgeBase prepare(const KnowledgeBase& kb);

std::size_t atom_leaf_count(const Formula& f);

}  // namespace incmeter
