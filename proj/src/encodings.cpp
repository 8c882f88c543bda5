#include "incmeter/encodings.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "incmeter/error.hpp"

namespace incmeter {

std::string site_key(std::size_t formula, const std::string& path) { return std::to_string(formula) + ":" + path; }

const std::string& SatEncoding::rule_of(std::size_t clause) const {
    auto it = std::upper_bound(provenance.begin(), provenance.end(), clause,
                               [](std::size_t c, const RuleSpan& s) { return c < s.end; });
    if (it == provenance.end() || clause < it->begin) throw Error("clause outside provenance map");
    return it->tag;
}

namespace {

class Emitter {
  public:
    Emitter(Measure m, int u) {
        p_.measure = m;
        p_.bound = u;
    }
    int var(const VarName& n) { return p_.vars.get_or_create(n); }
    void add(std::string tag, Expr e) { p_.formulas.push_back({std::move(tag), std::move(e)}); }
    void card(std::string tag, std::vector<Lit> lits, int k, CardMethod method) {
        p_.cards.push_back({std::move(tag), CardinalityRequest{k, std::move(lits), method}});
    }
    EncodedProblem take() && { return std::move(p_); }

  private:
    EncodedProblem p_;
};

Expr lit(int v) { return Expr::var(v); }

// SC1-SC16; SC17 only when with_card.
void contension_rules(const KnowledgeBase& pk, int u, CardMethod method, bool with_card, Emitter& em) {
    auto sig = signature(pk);
    for (const auto& a : sig)
        for (char t : {'t', 'f', 'b'}) em.var(VarName::tri(a, t));
    auto sites = subformulas(pk);
    auto is_const = [](const Formula& f) { return f.kind == Kind::Top || f.kind == Kind::Bottom; };
    for (const auto& s : sites) {
        if (is_const(*s.node)) continue;
        for (char t : {'t', 'f', 'b'}) em.var(VarName::sub(site_key(s.formula, s.path), t));
    }
    for (const auto& a : sig) {
        auto t = lit(em.var(VarName::tri(a, 't')));
        auto f = lit(em.var(VarName::tri(a, 'f')));
        auto b = lit(em.var(VarName::tri(a, 'b')));
        em.add("SC3", all_of({any_of({t, f, b}), any_of({!t, !f}), any_of({!t, !b}), any_of({!b, !f})}));
    }
    auto v = [&](std::size_t formula, const std::string& path, char t) {
        return lit(em.var(VarName::sub(site_key(formula, path), t)));
    };
    for (const auto& s : sites) {
        const auto& n = *s.node;
        auto self = [&](char t) { return v(s.formula, s.path, t); };
        switch (n.kind) {
            case Kind::And: {
                auto l = [&](char t) { return v(s.formula, s.path + 'l', t); };
                auto r = [&](char t) { return v(s.formula, s.path + 'r', t); };
                em.add("SC4", equiv(self('t'), all_of({l('t'), r('t')})));
                em.add("SC5", equiv(self('f'), any_of({l('f'), r('f')})));
                em.add("SC6", equiv(self('b'), all_of({any_of({!l('t'), !r('t')}), !l('f'), !r('f')})));
                break;
            }
            case Kind::Or: {
                auto l = [&](char t) { return v(s.formula, s.path + 'l', t); };
                auto r = [&](char t) { return v(s.formula, s.path + 'r', t); };
                em.add("SC7", equiv(self('t'), any_of({l('t'), r('t')})));
                em.add("SC8", equiv(self('f'), all_of({l('f'), r('f')})));
                em.add("SC9", equiv(self('b'), all_of({any_of({!l('f'), !r('f')}), !l('t'), !r('t')})));
                break;
            }
            case Kind::Not: {
                auto c = [&](char t) { return v(s.formula, s.path + 'n', t); };
                em.add("SC10", equiv(self('t'), c('f')));
                em.add("SC11", equiv(self('f'), c('t')));
                em.add("SC12", equiv(self('b'), c('b')));
                break;
            }
            case Kind::Atom:
                em.add("SC13", equiv(self('t'), lit(em.var(VarName::tri(n.name, 't')))));
                em.add("SC14", equiv(self('f'), lit(em.var(VarName::tri(n.name, 'f')))));
                em.add("SC15", equiv(self('b'), lit(em.var(VarName::tri(n.name, 'b')))));
                break;
            case Kind::Top:
            case Kind::Bottom: break;
            default: throw Error("contension encoding needs a reduced KB");
        }
    }
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const auto& root = *pk.formulas[i];
        if (root.kind == Kind::Top) continue;
        if (root.kind == Kind::Bottom) {
            em.add("SC16", Expr::falsity());
            continue;
        }
        em.add("SC16", any_of({v(i, "", 't'), v(i, "", 'b')}));
    }
    if (with_card) {
        std::vector<Lit> bs;
        for (const auto& a : sig) bs.push_back(em.var(VarName::tri(a, 'b')));
        em.card("SC17", std::move(bs), u, method);
    }
}

void forgetting_rules(const KnowledgeBase& pk, int u, CardMethod method, Emitter& em) {
    auto occs = label_occurrences(pk);
    std::map<std::pair<std::size_t, std::string>, const AtomOccurrence*> at_site;
    for (const auto& o : occs) {
        em.var(VarName::occ(o.atom, o.label));
        em.var(VarName::forget_top(o.atom, o.label));
        em.var(VarName::forget_bot(o.atom, o.label));
        at_site[{o.formula, o.path}] = &o;
    }
    // Formula with every occurrence X^l replaced by (t_{X,l} || X^l) && !f_{X,l}.
    std::function<Expr(const Formula&, std::size_t, const std::string&)> subst =
        [&](const Formula& f, std::size_t idx, const std::string& path) -> Expr {
        switch (f.kind) {
            case Kind::Atom: {
                const auto* o = at_site.at({idx, path});
                auto x = lit(em.var(VarName::occ(o->atom, o->label)));
                auto t = lit(em.var(VarName::forget_top(o->atom, o->label)));
                auto fb = lit(em.var(VarName::forget_bot(o->atom, o->label)));
                return all_of({any_of({t, x}), !fb});
            }
            case Kind::Top: return Expr::truth();
            case Kind::Bottom: return Expr::falsity();
            case Kind::Not: return !subst(*f.left, idx, path + 'n');
            case Kind::And: return all_of({subst(*f.left, idx, path + 'l'), subst(*f.right, idx, path + 'r')});
            case Kind::Or: return any_of({subst(*f.left, idx, path + 'l'), subst(*f.right, idx, path + 'r')});
            default: throw Error("forgetting encoding needs a reduced KB");
        }
    };
    for (std::size_t i = 0; i < pk.size(); ++i) em.add("SF3", subst(*pk.formulas[i], i, ""));
    // Unforgotten occurrences of one atom share its value.
    for (const auto& o : occs)
        if (o.label > 1)
            em.add("SF1", equiv(lit(em.var(VarName::occ(o.atom, o.label))), lit(em.var(VarName::occ(o.atom, 1)))));
    std::vector<Lit> switches;
    for (const auto& o : occs) {
        int t = em.var(VarName::forget_top(o.atom, o.label));
        int f = em.var(VarName::forget_bot(o.atom, o.label));
        em.add("SF4", any_of({!lit(t), !lit(f)}));
        switches.push_back(t);
        switches.push_back(f);
    }
    em.card("SF5", std::move(switches), u, method);
}

void hs_rules(const KnowledgeBase& pk, int blocks, Emitter& em) {
    if (pk.empty()) throw Error("hitting-set encoding of an empty KB");
    if (blocks < 1) throw Error("hitting-set encoding needs at least one block");
    auto sig = signature(pk);
    for (int i = 1; i <= blocks; ++i)
        for (const auto& a : sig) em.var(VarName::copy(a, i));
    for (std::size_t j = 0; j < pk.size(); ++j)
        for (int i = 1; i <= blocks; ++i) em.var(VarName::block(static_cast<int>(j), i));
    for (std::size_t j = 0; j < pk.size(); ++j) {
        for (int i = 1; i <= blocks; ++i) {
            auto p = lit(em.var(VarName::block(static_cast<int>(j), i)));
            auto body = formula_expr(*pk.formulas[j], [&](const std::string& a) { return em.var(VarName::copy(a, i)); });
            em.add("SH3", implies(p, std::move(body)));
        }
    }
    for (std::size_t j = 0; j < pk.size(); ++j) {
        std::vector<Expr> ps;
        for (int i = 1; i <= blocks; ++i) ps.push_back(lit(em.var(VarName::block(static_cast<int>(j), i))));
        em.add("SH4", any_of(std::move(ps)));
    }
}

void distance_rules(const KnowledgeBase& pk, int u, CardMethod method, bool global, Emitter& em) {
    const std::string pre = global ? "SDS" : "SDM";
    auto sig = signature(pk);
    const int k = static_cast<int>(pk.size());
    for (const auto& a : sig) em.var(VarName::opt(a));
    for (int i = 1; i <= k; ++i)
        for (const auto& a : sig) em.var(VarName::copy(a, i));
    for (int i = 1; i <= k; ++i)
        for (const auto& a : sig) em.var(VarName::inv(a, i));
    for (int i = 1; i <= k; ++i)
        em.add(pre + "4", formula_expr(*pk.formulas[static_cast<std::size_t>(i - 1)],
                                       [&](const std::string& a) { return em.var(VarName::copy(a, i)); }));
    for (int i = 1; i <= k; ++i) {
        for (const auto& a : sig) {
            auto x = lit(em.var(VarName::copy(a, i)));
            auto o = lit(em.var(VarName::opt(a)));
            auto inv = lit(em.var(VarName::inv(a, i)));
            em.add(pre + "5", implies(x, any_of({o, inv})));
            em.add(pre + "6", implies(!x, any_of({!o, inv})));
        }
    }
    std::vector<Lit> all;
    for (int i = 1; i <= k; ++i) {
        std::vector<Lit> row;
        for (const auto& a : sig) row.push_back(em.var(VarName::inv(a, i)));
        if (global) {
            all.insert(all.end(), row.begin(), row.end());
        } else {
            em.card(pre + "7", std::move(row), u, method);
        }
    }
    if (global) em.card(pre + "7", std::move(all), u, method);
}

void dhit_rules(const KnowledgeBase& pk, int u, CardMethod method, Emitter& em) {
    auto sig = signature(pk);
    for (const auto& a : sig) em.var(VarName::plain(a));
    for (std::size_t j = 0; j < pk.size(); ++j) em.var(VarName::hit(static_cast<int>(j)));
    std::vector<Lit> hits;
    for (std::size_t j = 0; j < pk.size(); ++j) {
        auto body = formula_expr(*pk.formulas[j], [&](const std::string& a) { return em.var(VarName::plain(a)); });
        int h = em.var(VarName::hit(static_cast<int>(j)));
        em.add("SDH3", any_of({std::move(body), lit(h)}));
        hits.push_back(h);
    }
    em.card("SDH4", std::move(hits), u, method);
}

}  // namespace

EncodedProblem build_encoding(Measure m, const KnowledgeBase& kb, int u, CardMethod card) {
    if (u < 0) throw Error("negative bound");
    auto pk = prepare(kb);
    Emitter em(m, u);
    switch (m) {
        case Measure::Contension: contension_rules(pk, u, card, true, em); break;
        case Measure::Forgetting: forgetting_rules(pk, u, card, em); break;
        case Measure::HittingSet: hs_rules(pk, u, em); break;
        case Measure::MaxDistance: distance_rules(pk, u, card, false, em); break;
        case Measure::SumDistance: distance_rules(pk, u, card, true, em); break;
        case Measure::HitDistance: dhit_rules(pk, u, card, em); break;
    }
    return std::move(em).take();
}

SatEncoding to_cnf(EncodedProblem p) {
    SatEncoding out;
    out.measure = p.measure;
    out.bound = p.bound;
    out.base_vars = p.vars.size();
    CnfBuilder b(std::move(p.vars));
    auto record = [&](const std::string& tag, std::size_t begin) {
        std::size_t end = b.clause_count();
        if (end == begin) return;
        if (!out.provenance.empty() && out.provenance.back().tag == tag) {
            out.provenance.back().end = end;
        } else {
            out.provenance.push_back({tag, begin, end});
        }
    };
    for (const auto& item : p.formulas) {
        auto begin = b.clause_count();
        b.assert_expr(item.expr);
        record(item.tag, begin);
    }
    for (const auto& c : p.cards) {
        auto begin = b.clause_count();
        add_at_most(c.req, b);
        record(c.tag, begin);
    }
    out.cnf = std::move(b).finish();
    return out;
}

SatEncoding encode(Measure m, const KnowledgeBase& kb, int u, CardMethod card) {
    return to_cnf(build_encoding(m, kb, u, card));
}

SatEncoding encode_contension(const KnowledgeBase& kb, int u) { return encode(Measure::Contension, kb, u); }
SatEncoding encode_forgetting(const KnowledgeBase& kb, int u) { return encode(Measure::Forgetting, kb, u); }
SatEncoding encode_hs(const KnowledgeBase& kb, int blocks) { return encode(Measure::HittingSet, kb, blocks); }
SatEncoding encode_dmax(const KnowledgeBase& kb, int u) { return encode(Measure::MaxDistance, kb, u); }
SatEncoding encode_dsum(const KnowledgeBase& kb, int u) { return encode(Measure::SumDistance, kb, u); }
SatEncoding encode_dhit(const KnowledgeBase& kb, int u) { return encode(Measure::HitDistance, kb, u); }

MaxSatInstance encode_contension_maxsat(const KnowledgeBase& kb) {
    auto pk = prepare(kb);
    Emitter em(Measure::Contension, 0);
    contension_rules(pk, 0, CardMethod::Sequential, false, em);
    auto enc = to_cnf(std::move(em).take());
    MaxSatInstance inst;
    for (const auto& a : signature(pk)) inst.soft.push_back(-enc.cnf.vars.find(VarName::tri(a, 'b')));
    inst.hard = std::move(enc.cnf);
    return inst;
}

}  // namespace incmeter
