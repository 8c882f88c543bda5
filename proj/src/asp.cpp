#include "incmeter/asp.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "incmeter/error.hpp"
#include "incmeter/process.hpp"

namespace incmeter {

namespace {

constexpr std::string_view kContension = R"lp(tv(t;f;b).
1{truthValue(A,T) : tv(T)}1 :- atom(A).
truthValue(F,t) :- conjunction(F,G,H), truthValue(G,t), truthValue(H,t).
truthValue(F,f) :- conjunction(F,G,H), 1{truthValue(G,f); truthValue(H,f)}.
truthValue(F,b) :- conjunction(F,_,_), not truthValue(F,t), not truthValue(F,f).
truthValue(F,f) :- disjunction(F,G,H), truthValue(G,f), truthValue(H,f).
truthValue(F,t) :- disjunction(F,G,H), 1{truthValue(G,t); truthValue(H,t)}.
truthValue(F,b) :- disjunction(F,_,_), not truthValue(F,t), not truthValue(F,f).
truthValue(F,t) :- negation(F,G), truthValue(G,f).
truthValue(F,f) :- negation(F,G), truthValue(G,t).
truthValue(F,b) :- negation(F,G), truthValue(G,b).
truthValue(F,T) :- formulaIsAtom(F,G), truthValue(G,T), tv(T).
:- truthValue(F,f), kbMember(F).
#minimize{1,A : truthValue(A,b), atom(A)}.
)lp";
constexpr std::string_view kForgetting = R"lp(tv(t;f).
atv(t;f;ftop;fbot).
atomOcc(A,L) :- formulaIsAtomOcc(_,A,L).
atom(A) :- atomOcc(A,_).
1{truthValue(A,T) : tv(T)}1 :- atom(A).
truthValue(F,t) :- conjunction(F,G,H), truthValue(G,t), truthValue(H,t).
truthValue(F,f) :- conjunction(F,_,_), not truthValue(F,t).
truthValue(F,f) :- disjunction(F,G,H), truthValue(G,f), truthValue(H,f).
truthValue(F,t) :- disjunction(F,_,_), not truthValue(F,f).
truthValue(F,t) :- negation(F,G), truthValue(G,f).
truthValue(F,f) :- negation(F,G), truthValue(G,t).
truthValue(F,t) :- formulaIsAtomOcc(F,A,L), atomTruthValue(A,L,t).
truthValue(F,t) :- formulaIsAtomOcc(F,A,L), atomTruthValue(A,L,ftop).
truthValue(F,f) :- formulaIsAtomOcc(F,A,L), atomTruthValue(A,L,f).
truthValue(F,f) :- formulaIsAtomOcc(F,A,L), atomTruthValue(A,L,fbot).
atomTruthValue(A,L,ftop) :- atomOcc(A,L), not atomTruthValue(A,L,t), not atomTruthValue(A,L,f), not atomTruthValue(A,L,fbot).
atomTruthValue(A,L,fbot) :- atomOcc(A,L), not atomTruthValue(A,L,t), not atomTruthValue(A,L,f), not atomTruthValue(A,L,ftop).
atomTruthValue(A,L,t) :- atomOcc(A,L), truthValue(A,t), not atomTruthValue(A,L,f), not atomTruthValue(A,L,ftop), not atomTruthValue(A,L,fbot).
atomTruthValue(A,L,f) :- atomOcc(A,L), truthValue(A,f), not atomTruthValue(A,L,t), not atomTruthValue(A,L,ftop), not atomTruthValue(A,L,fbot).
:- truthValue(F,f), kbMember(F).
atomOccForgotten(A,L) :- atomTruthValue(A,L,ftop).
atomOccForgotten(A,L) :- atomTruthValue(A,L,fbot).
#minimize{1,A,L : atomOccForgotten(A,L)}.
)lp";
constexpr std::string_view kHittingSet = R"lp(tv(t;f).
1{truthValueInt(A,I,T) : tv(T)}1 :- atom(A), interpretation(I).
truthValueInt(F,I,t) :- conjunction(F,G,H), interpretation(I), truthValueInt(G,I,t), truthValueInt(H,I,t).
truthValueInt(F,I,f) :- conjunction(F,_,_), interpretation(I), not truthValueInt(F,I,t).
truthValueInt(F,I,f) :- disjunction(F,G,H), interpretation(I), truthValueInt(G,I,f), truthValueInt(H,I,f).
truthValueInt(F,I,t) :- disjunction(F,_,_), interpretation(I), not truthValueInt(F,I,f).
truthValueInt(F,I,t) :- negation(F,G), truthValueInt(G,I,f).
truthValueInt(F,I,f) :- negation(F,G), truthValueInt(G,I,t).
truthValueInt(F,I,T) :- formulaIsAtom(F,G), truthValueInt(G,I,T), interpretation(I), tv(T).
truthValue(F,t) :- truthValueInt(F,I,t), kbMember(F), interpretation(I), interpretationActive(I).
truthValue(F,f) :- kbMember(F), not truthValue(F,t).
:- truthValue(F,f), kbMember(F).
#minimize{1,I : interpretationActive(I)}.
)lp";
constexpr std::string_view kMaxDistance = R"lp(tv(t;f).
1{truthValueInt(A,I,T) : tv(T)}1 :- atom(A), interpretation(I).
truthValueInt(F,I,t) :- conjunction(F,G,H), interpretation(I), truthValueInt(G,I,t), truthValueInt(H,I,t).
truthValueInt(F,I,f) :- conjunction(F,_,_), interpretation(I), not truthValueInt(F,I,t).
truthValueInt(F,I,f) :- disjunction(F,G,H), interpretation(I), truthValueInt(G,I,f), truthValueInt(H,I,f).
truthValueInt(F,I,t) :- disjunction(F,_,_), interpretation(I), not truthValueInt(F,I,f).
truthValueInt(F,I,t) :- negation(F,G), truthValueInt(G,I,f).
truthValueInt(F,I,f) :- negation(F,G), truthValueInt(G,I,t).
truthValueInt(F,I,T) :- formulaIsAtom(F,G), truthValueInt(G,I,T), interpretation(I), tv(T).
truthValueInt(F,L,I,T) :- kbMember(F,L), interpretation(I), tv(T), truthValueInt(F,I,T).
:- truthValueInt(F,L,I,f), kbMember(F,L), interpretation(I), L == I.
diff(A,I,J) :- atom(A), interpretation(I), interpretation(J), truthValueInt(A,I,T), truthValueInt(A,J,U), T != U.
d(I,J,X) :- interpretation(I), interpretation(J), X = #count{A : diff(A,I,J), atom(A)}.
#minimize{X : dMax(X)}.
)lp";
constexpr std::string_view kSumDistance = R"lp(tv(t;f).
1{truthValueInt(A,I,T) : tv(T)}1 :- atom(A), interpretation(I).
truthValueInt(F,I,t) :- conjunction(F,G,H), interpretation(I), truthValueInt(G,I,t), truthValueInt(H,I,t).
truthValueInt(F,I,f) :- conjunction(F,_,_), interpretation(I), not truthValueInt(F,I,t).
truthValueInt(F,I,f) :- disjunction(F,G,H), interpretation(I), truthValueInt(G,I,f), truthValueInt(H,I,f).
truthValueInt(F,I,t) :- disjunction(F,_,_), interpretation(I), not truthValueInt(F,I,f).
truthValueInt(F,I,t) :- negation(F,G), truthValueInt(G,I,f).
truthValueInt(F,I,f) :- negation(F,G), truthValueInt(G,I,t).
truthValueInt(F,I,T) :- formulaIsAtom(F,G), truthValueInt(G,I,T), interpretation(I), tv(T).
truthValueInt(F,L,I,T) :- kbMember(F,L), interpretation(I), tv(T), truthValueInt(F,I,T).
:- truthValueInt(F,L,I,f), kbMember(F,L), interpretation(I), L == I.
diff(A,I,J) :- atom(A), interpretation(I), interpretation(J), truthValueInt(A,I,T), truthValueInt(A,J,U), T != U.
d(I,J,X) :- interpretation(I), interpretation(J), X = #count{A : diff(A,I,J), atom(A)}.
#minimize{X : dSum(X)}.
)lp";
constexpr std::string_view kHitDistance = R"lp(tv(t;f).
1{truthValue(A,T) : tv(T)}1 :- atom(A).
truthValue(F,t) :- conjunction(F,G,H), truthValue(G,t), truthValue(H,t).
truthValue(F,f) :- conjunction(F,_,_), not truthValue(F,t).
truthValue(F,f) :- disjunction(F,G,H), truthValue(G,f), truthValue(H,f).
truthValue(F,t) :- disjunction(F,_,_), not truthValue(F,f).
truthValue(F,t) :- negation(F,G), truthValue(G,f).
truthValue(F,f) :- negation(F,G), truthValue(G,t).
truthValue(F,T) :- formulaIsAtom(F,G), truthValue(G,T), tv(T).
truthValueKbMember(F,T) :- kbMember(F), tv(T), truthValue(F,T).
#minimize{1,F : truthValueKbMember(F,f)}.
)lp";

}  // namespace

std::string_view asp_static_block(Measure m) {
    switch (m) {
        case Measure::Contension: return kContension;
        case Measure::Forgetting: return kForgetting;
        case Measure::HittingSet: return kHittingSet;
        case Measure::MaxDistance: return kMaxDistance;
        case Measure::SumDistance: return kSumDistance;
        case Measure::HitDistance: return kHitDistance;
    }
    throw Error("unknown measure");
}

std::string asp_atom_constant(std::string_view atom) { return "a_" + std::string(atom); }

std::string asp_site_constant(std::size_t formula, std::string_view path) {
    std::string out = "f_" + std::to_string(formula);
    for (char c : path) {
        out += '_';
        out += c;
    }
    return out;
}

AspProgram emit_asp(Measure m, const KnowledgeBase& kb) {
    auto pk = prepare(kb);
    AspProgram prog;
    prog.measure = m;
    const bool indexed = m == Measure::MaxDistance || m == Measure::SumDistance;
    const bool forgetting = m == Measure::Forgetting;

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < pk.size(); ++i)
        if (pk.formulas[i]->kind != Kind::Top) kept.push_back(i);
    KnowledgeBase rest;
    for (auto i : kept) rest.formulas.push_back(pk.formulas[i]);
    const auto k = static_cast<long>(kept.size());

    std::ostringstream facts;
    auto site = [&](std::size_t local, const std::string& path) {
        auto c = asp_site_constant(kept[local], path);
        prog.symbols[c] = "site:" + std::to_string(kept[local]) + ":" + path;
        return c;
    };
    for (std::size_t j = 0; j < kept.size(); ++j) {
        facts << "kbMember(" << site(j, "");
        if (indexed) facts << "," << j;
        facts << ").\n";
    }
    if (!forgetting)
        for (const auto& a : signature(rest)) {
            auto c = asp_atom_constant(a);
            prog.symbols[c] = "atom:" + a;
            facts << "atom(" << c << ").\n";
        }
    if (m == Measure::HittingSet) facts << "interpretation(1.." << std::max(k, 1L) << ").\n";
    if (indexed) facts << "interpretation(0.." << k << ").\n";

    auto sites = subformulas(rest);
    for (Kind kind : {Kind::And, Kind::Or, Kind::Not}) {
        for (const auto& s : sites) {
            if (s.node->kind != kind) continue;
            if (kind == Kind::Not) {
                facts << "negation(" << site(s.formula, s.path) << "," << site(s.formula, s.path + 'n') << ").\n";
            } else {
                facts << (kind == Kind::And ? "conjunction(" : "disjunction(") << site(s.formula, s.path) << ","
                      << site(s.formula, s.path + 'l') << "," << site(s.formula, s.path + 'r') << ").\n";
            }
        }
    }
    if (forgetting) {
        for (const auto& o : label_occurrences(rest)) {
            auto c = asp_atom_constant(o.atom);
            prog.symbols[c] = "atom:" + o.atom;
            facts << "formulaIsAtomOcc(" << site(o.formula, o.path) << "," << c << "," << o.label << ").\n";
        }
    } else {
        for (const auto& s : sites)
            if (s.node->kind == Kind::Atom)
                facts << "formulaIsAtom(" << site(s.formula, s.path) << "," << asp_atom_constant(s.node->name)
                      << ").\n";
    }
    // Folded-to-bottom members evaluate to f everywhere.
    for (std::size_t j = 0; j < kept.size(); ++j) {
        if (rest.formulas[j]->kind != Kind::Bottom) continue;
        auto c = site(j, "");
        if (indexed) {
            facts << "truthValueInt(" << c << ",I,f) :- interpretation(I).\n";
        } else if (m != Measure::HittingSet) {
            facts << "truthValue(" << c << ",f).\n";
        }
    }
    if (m == Measure::HittingSet)
        facts << "1{interpretationActive(X) : interpretation(X)}" << std::max(k, 1L) << ".\n";
    if (m == Measure::MaxDistance)
        facts << "dMax(X) :- X = #max{Y : d(I," << k << ",Y), interpretation(I)}, X >= 0.\n";
    if (m == Measure::SumDistance)
        facts << "dSum(X) :- X = #sum{Y,I : d(I," << k << ",Y), interpretation(I)}, X >= 0.\n";

    prog.facts = facts.str();
    prog.static_rules = std::string(asp_static_block(m));
    return prog;
}

std::optional<AspConfig> AspConfig::from_env() {
    const char* p = std::getenv("INCMETER_ASP_SOLVER");
    if (!p || !*p) return std::nullopt;
    AspConfig cfg;
    cfg.path = p;
    return cfg;
}

AnswerSetReport parse_asp_output(std::string_view text) {
    AnswerSetReport r;
    std::istringstream in{std::string(text)};
    std::string line;
    bool answer_next = false;
    bool have_answer = false;
    bool optimum = false;
    bool unsat = false;
    bool satisfiable = false;
    bool optimizing = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (answer_next) {
            answer_next = false;
            r.atoms.clear();
            std::istringstream ls(line);
            std::string a;
            while (ls >> a) r.atoms.push_back(a);
            r.cost.reset();
            continue;
        }
        if (line.rfind("Answer:", 0) == 0) {
            answer_next = true;
            have_answer = true;
        } else if (line.rfind("Optimization: ", 0) == 0) {
            std::istringstream ls(line.substr(14));
            long long c = 0;
            if (ls >> c) r.cost = c;
            optimizing = true;
        } else if (line == "OPTIMUM FOUND") {
            optimum = true;
        } else if (line == "UNSATISFIABLE") {
            unsat = true;
        } else if (line == "SATISFIABLE") {
            satisfiable = true;
        }
    }
    if (unsat && !have_answer) {
        r.status = AnswerSetReport::Status::Unsatisfiable;
    } else if (have_answer && (optimum || (satisfiable && !optimizing))) {
        // An empty #minimize leaves nothing to optimize; clingo then reports SATISFIABLE.
        r.status = AnswerSetReport::Status::Optimal;
    } else {
        r.status = AnswerSetReport::Status::Timeout;
    }
    return r;
}

AnswerSetReport solve_asp(const AspProgram& prog, const AspConfig& cfg, Deadline deadline) {
    if (cfg.path.empty()) throw BackendError("ASP backend unavailable: no solver configured");
    TempFile file(".lp", prog.text());
    auto args = cfg.args;
    args.push_back(file.path());
    auto pr = run_process(cfg.path, args, deadline.min(Deadline::after(cfg.timeout)));
    if (pr.timed_out) return AnswerSetReport{};
    auto r = parse_asp_output(pr.output);
    if (r.status == AnswerSetReport::Status::Timeout && pr.output.find("Solving...") == std::string::npos)
        throw BackendError("ASP solver produced no result (exit " + std::to_string(pr.exit_code) + ")");
    return r;
}

namespace {

struct GroundAtom {
    std::string name;
    std::vector<std::string> args;
};

// Flat terms only; the programs never produce nested function terms.
GroundAtom split_atom(const std::string& s) {
    GroundAtom g;
    auto open = s.find('(');
    if (open == std::string::npos) {
        g.name = s;
        return g;
    }
    g.name = s.substr(0, open);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            g.args.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    g.args.push_back(cur);
    return g;
}

}  // namespace

Value extract_value(Measure m, const AnswerSetReport& report, bool infinity_allowed) {
    using S = AnswerSetReport::Status;
    if (report.status == S::Timeout) throw Error("ASP solve did not finish");
    if (report.status == S::Unsatisfiable) {
        if (infinity_allowed) return Value::infinity();
        throw Error("ASP program unsatisfiable for a measure without infinite values");
    }
    std::vector<GroundAtom> atoms;
    for (const auto& s : report.atoms) atoms.push_back(split_atom(s));
    auto count = [&](auto pred) { return std::count_if(atoms.begin(), atoms.end(), pred); };
    long long v = 0;
    switch (m) {
        case Measure::Contension: {
            std::set<std::string> sig;
            for (const auto& a : atoms)
                if (a.name == "atom" && a.args.size() == 1) sig.insert(a.args[0]);
            v = count([&](const GroundAtom& a) {
                return a.name == "truthValue" && a.args.size() == 2 && a.args[1] == "b" && sig.count(a.args[0]);
            });
            break;
        }
        case Measure::Forgetting:
            v = count([](const GroundAtom& a) { return a.name == "atomOccForgotten"; });
            break;
        case Measure::HittingSet:
            v = count([](const GroundAtom& a) { return a.name == "interpretationActive"; }) - 1;
            if (v < 0) throw Error("ASP answer set without active interpretations");
            break;
        case Measure::MaxDistance:
        case Measure::SumDistance: {
            const char* pred = m == Measure::MaxDistance ? "dMax" : "dSum";
            auto it = std::find_if(atoms.begin(), atoms.end(), [&](const GroundAtom& a) { return a.name == pred; });
            if (it == atoms.end() || it->args.size() != 1) throw Error(std::string("answer set has no ") + pred);
            v = std::stoll(it->args[0]);
            break;
        }
        case Measure::HitDistance:
            v = count([](const GroundAtom& a) {
                return a.name == "truthValueKbMember" && a.args.size() == 2 && a.args[1] == "f";
            });
            break;
    }
    if (report.cost) {
        long long expect = m == Measure::HittingSet ? v + 1 : v;
        if (*report.cost != expect) throw BackendError("ASP optimization cost disagrees with the answer set");
    }
    return Value::of(v);
}

}  // namespace incmeter
