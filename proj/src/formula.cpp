#include "incmeter/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "incmeter/error.hpp"

namespace incmeter {

bool Formula::is_binary() const {
    return kind == Kind::And || kind == Kind::Or || kind == Kind::Implies || kind == Kind::Iff;
}

namespace {

FormulaPtr make(Kind k, std::string name, FormulaPtr l, FormulaPtr r) {
    return std::make_shared<const Formula>(Formula{k, std::move(name), std::move(l), std::move(r)});
}

const FormulaPtr& top_singleton() {
    static const FormulaPtr t = make(Kind::Top, "", nullptr, nullptr);
    return t;
}

const FormulaPtr& bottom_singleton() {
    static const FormulaPtr b = make(Kind::Bottom, "", nullptr, nullptr);
    return b;
}

}  // namespace

FormulaPtr atom(std::string name) {
    if (!valid_atom_name(name)) throw Error("invalid atom name '" + name + "'");
    return make(Kind::Atom, std::move(name), nullptr, nullptr);
}
FormulaPtr top() { return top_singleton(); }
FormulaPtr bottom() { return bottom_singleton(); }
FormulaPtr neg(FormulaPtr f) { return make(Kind::Not, "", std::move(f), nullptr); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make(Kind::And, "", std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make(Kind::Or, "", std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
    return make(Kind::Implies, "", std::move(a), std::move(b));
}
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return make(Kind::Iff, "", std::move(a), std::move(b)); }

bool valid_atom_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name[0]);
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::Atom: return a.name == b.name;
        case Kind::Top:
        case Kind::Bottom: return true;
        case Kind::Not: return structurally_equal(*a.left, *b.left);
        default: return structurally_equal(*a.left, *b.left) && structurally_equal(*a.right, *b.right);
    }
}

bool structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(*a.formulas[i], *b.formulas[i])) return false;
    return true;
}

// ---------------------------------------------------------------- printing

namespace {

int precedence(Kind k) {
    switch (k) {
        case Kind::Iff: return 1;
        case Kind::Implies: return 2;
        case Kind::Or: return 3;
        case Kind::And: return 4;
        default: return 5;
    }
}

const char* op_text(Kind k) {
    switch (k) {
        case Kind::Iff: return " <=> ";
        case Kind::Implies: return " => ";
        case Kind::Or: return " || ";
        case Kind::And: return " && ";
        default: return "";
    }
}

void print(const Formula& f, std::string& out) {
    switch (f.kind) {
        case Kind::Atom: out += f.name; return;
        case Kind::Top: out += '+'; return;
        case Kind::Bottom: out += '-'; return;
        case Kind::Not:
            out += '!';
            if (f.left->is_binary()) {
                out += '(';
                print(*f.left, out);
                out += ')';
            } else {
                print(*f.left, out);
            }
            return;
        default: break;
    }
    int p = precedence(f.kind);
    // Binary operators associate to the right, so a left child of equal
    // precedence needs parentheses and a right child does not.
    bool wrap_left = f.left->is_binary() && precedence(f.left->kind) <= p;
    bool wrap_right = f.right->is_binary() && precedence(f.right->kind) < p;
    if (wrap_left) out += '(';
    print(*f.left, out);
    if (wrap_left) out += ')';
    out += op_text(f.kind);
    if (wrap_right) out += '(';
    print(*f.right, out);
    if (wrap_right) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

std::string to_string(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& f : kb.formulas) {
        print(*f, out);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { Atom, Top, Bottom, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int column;
};

class LineParser {
  public:
    LineParser(std::string_view line, int line_no) : line_no_(line_no) { tokenize(line); }

    FormulaPtr parse() {
        auto f = parse_iff();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

  private:
    void tokenize(std::string_view s) {
        std::size_t i = 0;
        while (i < s.size()) {
            char c = s[i];
            int col = static_cast<int>(i) + 1;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                    ++j;
                toks_.push_back({Tok::Atom, std::string(s.substr(i, j - i)), col});
                i = j;
                continue;
            }
            auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
            if (starts("<=>")) {
                toks_.push_back({Tok::Iff, "<=>", col});
                i += 3;
            } else if (starts("=>")) {
                toks_.push_back({Tok::Implies, "=>", col});
                i += 2;
            } else if (starts("&&")) {
                toks_.push_back({Tok::And, "&&", col});
                i += 2;
            } else if (starts("||")) {
                toks_.push_back({Tok::Or, "||", col});
                i += 2;
            } else if (c == '!') {
                toks_.push_back({Tok::Not, "!", col});
                ++i;
            } else if (c == '+') {
                toks_.push_back({Tok::Top, "+", col});
                ++i;
            } else if (c == '-') {
                toks_.push_back({Tok::Bottom, "-", col});
                ++i;
            } else if (c == '(') {
                toks_.push_back({Tok::LParen, "(", col});
                ++i;
            } else if (c == ')') {
                toks_.push_back({Tok::RParen, ")", col});
                ++i;
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", line_no_, col);
            }
        }
        toks_.push_back({Tok::End, "end of line", static_cast<int>(s.size()) + 1});
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no_, peek().column);
    }

    FormulaPtr parse_iff() {
        auto l = parse_implies();
        if (peek().kind == Tok::Iff) {
            next();
            return iff(l, parse_iff());
        }
        return l;
    }
    FormulaPtr parse_implies() {
        auto l = parse_or();
        if (peek().kind == Tok::Implies) {
            next();
            return implies(l, parse_implies());
        }
        return l;
    }
    FormulaPtr parse_or() {
        auto l = parse_and();
        if (peek().kind == Tok::Or) {
            next();
            return disj(l, parse_or());
        }
        return l;
    }
    FormulaPtr parse_and() {
        auto l = parse_unary();
        if (peek().kind == Tok::And) {
            next();
            return conj(l, parse_and());
        }
        return l;
    }
    FormulaPtr parse_unary() {
        if (peek().kind == Tok::Not) {
            next();
            return neg(parse_unary());
        }
        return parse_primary();
    }
    FormulaPtr parse_primary() {
        switch (peek().kind) {
            case Tok::Atom: return atom(next().text);
            case Tok::Top: next(); return top();
            case Tok::Bottom: next(); return bottom();
            case Tok::LParen: {
                next();
                auto f = parse_iff();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                next();
                return f;
            }
            case Tok::End: fail("unexpected end of line");
            default: fail("unexpected '" + peek().text + "'");
        }
    }

    int line_no_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return line;
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
    KnowledgeBase kb;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = strip_comment(text.substr(start, end - start));
        if (!blank(line)) kb.formulas.push_back(LineParser(line, line_no).parse());
        start = end + 1;
    }
    return kb;
}

FormulaPtr parse_formula(std::string_view text) {
    auto line = strip_comment(text);
    if (blank(line)) throw ParseError("empty formula", 1, 1);
    return LineParser(line, 1).parse();
}

// ---------------------------------------------------------------- structure

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.kind) {
        case Kind::Atom: out.insert(f.name); return;
        case Kind::Top:
        case Kind::Bottom: return;
        case Kind::Not: collect_atoms(*f.left, out); return;
        default:
            collect_atoms(*f.left, out);
            collect_atoms(*f.right, out);
    }
}

void collect_sites(std::size_t index, const FormulaPtr& f, std::string& path,
                   std::vector<SubformulaSite>& out) {
    out.push_back({index, path, f});
    if (f->kind == Kind::Not) {
        path.push_back('n');
        collect_sites(index, f->left, path, out);
        path.pop_back();
    } else if (f->is_binary()) {
        path.push_back('l');
        collect_sites(index, f->left, path, out);
        path.back() = 'r';
        collect_sites(index, f->right, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<std::string> signature(const Formula& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return {s.begin(), s.end()};
}

std::vector<std::string> signature(const KnowledgeBase& kb) {
    std::set<std::string> s;
    for (const auto& f : kb.formulas) collect_atoms(*f, s);
    return {s.begin(), s.end()};
}

std::vector<SubformulaSite> subformulas(const KnowledgeBase& kb) {
    std::vector<SubformulaSite> out;
    std::string path;
    for (std::size_t i = 0; i < kb.size(); ++i) collect_sites(i, kb.formulas[i], path, out);
    return out;
}

std::size_t count_occurrences(std::string_view a, const Formula& f) {
    switch (f.kind) {
        case Kind::Atom: return f.name == a ? 1 : 0;
        case Kind::Top:
        case Kind::Bottom: return 0;
        case Kind::Not: return count_occurrences(a, *f.left);
        default: return count_occurrences(a, *f.left) + count_occurrences(a, *f.right);
    }
}

std::size_t count_occurrences(std::string_view a, const KnowledgeBase& kb) {
    std::size_t n = 0;
    for (const auto& f : kb.formulas) n += count_occurrences(a, *f);
    return n;
}

std::vector<AtomOccurrence> label_occurrences(const KnowledgeBase& kb) {
    std::vector<AtomOccurrence> out;
    std::map<std::string, int, std::less<>> next_label;
    for (const auto& site : subformulas(kb)) {
        if (site.node->kind != Kind::Atom) continue;
        int label = ++next_label[site.node->name];
        out.push_back({site.node->name, label, site.formula, site.path});
    }
    return out;
}

std::size_t atom_leaf_count(const Formula& f) {
    switch (f.kind) {
        case Kind::Atom: return 1;
        case Kind::Top:
        case Kind::Bottom: return 0;
        case Kind::Not: return atom_leaf_count(*f.left);
        default: return atom_leaf_count(*f.left) + atom_leaf_count(*f.right);
    }
}

FormulaPtr node_at(const FormulaPtr& root, std::string_view path) {
    FormulaPtr cur = root;
    for (char c : path) {
        if (c == 'n' && cur->kind == Kind::Not) {
            cur = cur->left;
        } else if ((c == 'l' || c == 'r') && cur->is_binary()) {
            cur = c == 'l' ? cur->left : cur->right;
        } else {
            throw Error("invalid subformula path '" + std::string(path) + "'");
        }
    }
    return cur;
}

FormulaPtr replace_at(const FormulaPtr& root, std::string_view path, FormulaPtr replacement) {
    if (path.empty()) return replacement;
    char c = path.front();
    auto rest = path.substr(1);
    if (c == 'n' && root->kind == Kind::Not)
        return neg(replace_at(root->left, rest, std::move(replacement)));
    if (c == 'l' && root->is_binary())
        return make(root->kind, "", replace_at(root->left, rest, std::move(replacement)), root->right);
    if (c == 'r' && root->is_binary())
        return make(root->kind, "", root->left, replace_at(root->right, rest, std::move(replacement)));
    throw Error("invalid subformula path '" + std::string(path) + "'");
}

// ---------------------------------------------------------------- semantics

Interpretation::Interpretation(std::vector<std::string> atoms, std::vector<bool> values)
    : atoms_(std::move(atoms)), values_(std::move(values)) {
    if (atoms_.size() != values_.size()) throw Error("interpretation size mismatch");
    if (!std::is_sorted(atoms_.begin(), atoms_.end())) throw Error("interpretation atoms must be sorted");
}

Interpretation Interpretation::from_mask(const std::vector<std::string>& atoms, unsigned long long mask) {
    std::vector<bool> v(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) v[i] = (mask >> i) & 1ULL;
    return Interpretation(atoms, std::move(v));
}

bool Interpretation::has(std::string_view a) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

bool Interpretation::value(std::string_view a) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || *it != a) throw Error("atom '" + std::string(a) + "' not in interpretation");
    return values_[static_cast<std::size_t>(it - atoms_.begin())];
}

void Interpretation::set(std::string_view a, bool v) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || *it != a) throw Error("atom '" + std::string(a) + "' not in interpretation");
    values_[static_cast<std::size_t>(it - atoms_.begin())] = v;
}

bool eval2(const Formula& f, const Interpretation& w) {
    switch (f.kind) {
        case Kind::Atom: return w.value(f.name);
        case Kind::Top: return true;
        case Kind::Bottom: return false;
        case Kind::Not: return !eval2(*f.left, w);
        case Kind::And: return eval2(*f.left, w) && eval2(*f.right, w);
        case Kind::Or: return eval2(*f.left, w) || eval2(*f.right, w);
        case Kind::Implies: return !eval2(*f.left, w) || eval2(*f.right, w);
        case Kind::Iff: return eval2(*f.left, w) == eval2(*f.right, w);
    }
    return false;
}

bool eval2(const KnowledgeBase& kb, const Interpretation& w) {
    return std::all_of(kb.formulas.begin(), kb.formulas.end(),
                       [&](const FormulaPtr& f) { return eval2(*f, w); });
}

std::vector<Interpretation> enumerate_models(const KnowledgeBase& kb, int cap) {
    auto sig = signature(kb);
    if (static_cast<int>(sig.size()) > cap)
        throw CapExceeded("signature of " + std::to_string(sig.size()) + " atoms exceeds cap " +
                          std::to_string(cap));
    std::vector<Interpretation> out;
    for (unsigned long long m = 0; m < (1ULL << sig.size()); ++m) {
        auto w = Interpretation::from_mask(sig, m);
        if (eval2(kb, w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<Interpretation> enumerate_models(const FormulaPtr& f, const std::vector<std::string>& sig,
                                             int cap) {
    for (const auto& a : signature(*f))
        if (!std::binary_search(sig.begin(), sig.end(), a))
            throw Error("atom '" + a + "' outside the declared signature");
    if (static_cast<int>(sig.size()) > cap)
        throw CapExceeded("signature of " + std::to_string(sig.size()) + " atoms exceeds cap " +
                          std::to_string(cap));
    std::vector<Interpretation> out;
    for (unsigned long long m = 0; m < (1ULL << sig.size()); ++m) {
        auto w = Interpretation::from_mask(sig, m);
        if (eval2(*f, w)) out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------- rewriting

FormulaPtr reduce_connectives(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::Atom:
        case Kind::Top:
        case Kind::Bottom: return f;
        case Kind::Not: return neg(reduce_connectives(f->left));
        case Kind::And: return conj(reduce_connectives(f->left), reduce_connectives(f->right));
        case Kind::Or: return disj(reduce_connectives(f->left), reduce_connectives(f->right));
        case Kind::Implies: return disj(neg(reduce_connectives(f->left)), reduce_connectives(f->right));
        case Kind::Iff: {
            auto a = reduce_connectives(f->left);
            auto b = reduce_connectives(f->right);
            return conj(disj(neg(a), b), disj(neg(b), a));
        }
    }
    return f;
}

FormulaPtr fold_constants(const FormulaPtr& f) {
    auto is = [](const FormulaPtr& g, Kind k) { return g->kind == k; };
    switch (f->kind) {
        case Kind::Atom:
        case Kind::Top:
        case Kind::Bottom: return f;
        case Kind::Not: {
            auto c = fold_constants(f->left);
            if (is(c, Kind::Top)) return bottom();
            if (is(c, Kind::Bottom)) return top();
            return c == f->left ? f : neg(c);
        }
        case Kind::And: {
            auto a = fold_constants(f->left);
            auto b = fold_constants(f->right);
            if (is(a, Kind::Bottom) || is(b, Kind::Bottom)) return bottom();
            if (is(a, Kind::Top)) return b;
            if (is(b, Kind::Top)) return a;
            return a == f->left && b == f->right ? f : conj(a, b);
        }
        case Kind::Or: {
            auto a = fold_constants(f->left);
            auto b = fold_constants(f->right);
            if (is(a, Kind::Top) || is(b, Kind::Top)) return top();
            if (is(a, Kind::Bottom)) return b;
            if (is(b, Kind::Bottom)) return a;
            return a == f->left && b == f->right ? f : disj(a, b);
        }
        case Kind::Implies: return fold_constants(disj(neg(f->left), f->right));
        case Kind::Iff: {
            auto a = fold_constants(f->left);
            auto b = fold_constants(f->right);
            if (is(a, Kind::Top)) return b;
            if (is(b, Kind::Top)) return a;
            if (is(a, Kind::Bottom)) return fold_constants(neg(b));
            if (is(b, Kind::Bottom)) return fold_constants(neg(a));
            return iff(a, b);
        }
    }
    return f;
}

bool has_constants(const Formula& f) {
    switch (f.kind) {
        case Kind::Atom: return false;
        case Kind::Top:
        case Kind::Bottom: return true;
        case Kind::Not: return has_constants(*f.left);
        default: return has_constants(*f.left) || has_constants(*f.right);
    }
}

KnowledgeBase prepare(const KnowledgeBase& kb) {
    KnowledgeBase out;
    out.formulas.reserve(kb.size());
    for (const auto& f : kb.formulas) out.formulas.push_back(fold_constants(reduce_connectives(f)));
    return out;
}

}  // namespace incmeter
