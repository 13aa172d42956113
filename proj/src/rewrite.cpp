#include "lineal/rewrite.hpp"

#include <unordered_map>

namespace lineal {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

struct SumMatch {
    size_t i, j;
};

// Redex scanning with per-call memoization of the closed/normal side
// conditions (Restricted mode re-checks them at every enclosing node).
struct Scanner {
    Mode mode;
    std::unordered_map<const Term*, bool> normal_memo;
    std::unordered_map<const Term*, bool> closed_memo;

    bool closed(const TermPtr& t) {
        auto it = closed_memo.find(t.get());
        if (it != closed_memo.end()) return it->second;
        bool r = is_closed(t);
        closed_memo.emplace(t.get(), r);
        return r;
    }

    bool normal(const TermPtr& t) {
        auto it = normal_memo.find(t.get());
        if (it != normal_memo.end()) return it->second;
        normal_memo.emplace(t.get(), true);  // guard against self-queries along the spine
        bool r = !find_first(t).has_value();
        normal_memo[t.get()] = r;
        return r;
    }

    // Side condition (*): the shared subterm must be a closed normal term.
    bool star_ok(const TermPtr& t) { return mode == Mode::Unrestricted || (closed(t) && normal(t)); }

    std::optional<size_t> find_zero_addend(const Sum& s) const {
        for (size_t i = 0; i < s.addends.size(); ++i)
            if (std::holds_alternative<Zero>(s.addends[i]->node())) return i;
        return std::nullopt;
    }

    std::optional<SumMatch> find_f1(const Sum& s) {
        for (size_t i = 0; i + 1 < s.addends.size(); ++i) {
            const auto* a = std::get_if<Scale>(&s.addends[i]->node());
            if (!a) continue;
            for (size_t j = i + 1; j < s.addends.size(); ++j) {
                const auto* b = std::get_if<Scale>(&s.addends[j]->node());
                if (b && alpha_equal(a->body, b->body) && star_ok(a->body)) return SumMatch{i, j};
            }
        }
        return std::nullopt;
    }

    std::optional<SumMatch> find_f2(const Sum& s) {
        for (size_t i = 0; i < s.addends.size(); ++i) {
            const auto* a = std::get_if<Scale>(&s.addends[i]->node());
            if (!a) continue;
            for (size_t j = 0; j < s.addends.size(); ++j) {
                if (j == i || std::holds_alternative<Scale>(s.addends[j]->node())) continue;
                if (alpha_equal(a->body, s.addends[j]) && star_ok(a->body)) return SumMatch{i, j};
            }
        }
        return std::nullopt;
    }

    std::optional<SumMatch> find_f3(const Sum& s) {
        for (size_t i = 0; i + 1 < s.addends.size(); ++i)
            if (alpha_equal(s.addends[i], s.addends[i + 1]) && star_ok(s.addends[i])) return SumMatch{i, i + 1};
        return std::nullopt;
    }

    std::vector<RuleId> rules_at(const TermPtr& t) {
        std::vector<RuleId> out;
        if (const auto* s = std::get_if<Sum>(&t->node())) {
            if (find_zero_addend(*s)) out.push_back(RuleId::E1);
            if (find_f1(*s)) out.push_back(RuleId::F1);
            if (find_f2(*s)) out.push_back(RuleId::F2);
            if (find_f3(*s)) out.push_back(RuleId::F3);
        } else if (const auto* s = std::get_if<Scale>(&t->node())) {
            if (s->coeff.is_zero()) out.push_back(RuleId::E2);
            if (s->coeff.is_one()) out.push_back(RuleId::E3);
            if (std::holds_alternative<Zero>(s->body->node())) out.push_back(RuleId::E4);
            if (std::holds_alternative<Scale>(s->body->node())) out.push_back(RuleId::E5);
            if (std::holds_alternative<Sum>(s->body->node())) out.push_back(RuleId::E6);
        } else if (const auto* a = std::get_if<App>(&t->node())) {
            // (**) conditions the distributed sum itself.
            if (std::holds_alternative<Sum>(a->fun->node()) &&
                (mode == Mode::Unrestricted || (closed(a->fun) && normal(a->fun))))
                out.push_back(RuleId::A1);
            if (std::holds_alternative<Sum>(a->arg->node()) &&
                (mode == Mode::Unrestricted || (closed(a->arg) && normal(a->arg))))
                out.push_back(RuleId::A2);
            if (const auto* sc = std::get_if<Scale>(&a->fun->node()); sc && star_ok(sc->body))
                out.push_back(RuleId::A3);
            if (const auto* sc = std::get_if<Scale>(&a->arg->node()); sc && star_ok(sc->body))
                out.push_back(RuleId::A4);
            if (std::holds_alternative<Zero>(a->fun->node())) out.push_back(RuleId::A5);
            if (std::holds_alternative<Zero>(a->arg->node())) out.push_back(RuleId::A6);
            if (std::holds_alternative<Abs>(a->fun->node()) && is_base(a->arg)) out.push_back(RuleId::B);
        }
        return out;
    }

    void enumerate(const TermPtr& t, Path& path, std::vector<Redex>& out) {
        for (RuleId r : rules_at(t)) out.push_back({path, r});
        int n = child_count(t);
        for (int i = 0; i < n; ++i) {
            path.push_back(i);
            enumerate(child(t, i), path, out);
            path.pop_back();
        }
    }

    std::optional<Redex> find_first(const TermPtr& t) {
        Path path;
        return find_first_impl(t, path);
    }

    std::optional<Redex> find_first_impl(const TermPtr& t, Path& path) {
        auto rules = rules_at(t);
        if (!rules.empty()) return Redex{path, rules.front()};
        int n = child_count(t);
        for (int i = 0; i < n; ++i) {
            path.push_back(i);
            if (auto r = find_first_impl(child(t, i), path)) return r;
            path.pop_back();
        }
        return std::nullopt;
    }
};

TermPtr sum_without(const Sum& s, size_t drop) {
    std::vector<TermPtr> out;
    out.reserve(s.addends.size() - 1);
    for (size_t i = 0; i < s.addends.size(); ++i)
        if (i != drop) out.push_back(s.addends[i]);
    return mk_sum(std::move(out));
}

TermPtr sum_replacing_pair(const Sum& s, size_t i, size_t j, TermPtr repl) {
    std::vector<TermPtr> out;
    out.reserve(s.addends.size() - 1);
    for (size_t k = 0; k < s.addends.size(); ++k)
        if (k != i && k != j) out.push_back(s.addends[k]);
    out.push_back(std::move(repl));
    return mk_sum(std::move(out));
}

TermPtr apply_rule(Scanner& sc, const TermPtr& t, RuleId rule) {
    auto fail = []() -> TermPtr { throw std::logic_error("rule not applicable at position"); };
    switch (rule) {
        case RuleId::E1: {
            const auto* s = std::get_if<Sum>(&t->node());
            if (!s) return fail();
            auto i = sc.find_zero_addend(*s);
            if (!i) return fail();
            return sum_without(*s, *i);
        }
        case RuleId::E2: {
            const auto* s = std::get_if<Scale>(&t->node());
            if (!s || !s->coeff.is_zero()) return fail();
            return mk_zero();
        }
        case RuleId::E3: {
            const auto* s = std::get_if<Scale>(&t->node());
            if (!s || !s->coeff.is_one()) return fail();
            return s->body;
        }
        case RuleId::E4: {
            const auto* s = std::get_if<Scale>(&t->node());
            if (!s || !std::holds_alternative<Zero>(s->body->node())) return fail();
            return mk_zero();
        }
        case RuleId::E5: {
            const auto* s = std::get_if<Scale>(&t->node());
            if (!s) return fail();
            const auto* inner = std::get_if<Scale>(&s->body->node());
            if (!inner) return fail();
            return mk_scale(s->coeff * inner->coeff, inner->body);
        }
        case RuleId::E6: {
            const auto* s = std::get_if<Scale>(&t->node());
            if (!s) return fail();
            const auto* inner = std::get_if<Sum>(&s->body->node());
            if (!inner) return fail();
            std::vector<TermPtr> out;
            out.reserve(inner->addends.size());
            for (const auto& a : inner->addends) out.push_back(mk_scale(s->coeff, a));
            return mk_sum(std::move(out));
        }
        case RuleId::F1: {
            const auto* s = std::get_if<Sum>(&t->node());
            if (!s) return fail();
            auto m = sc.find_f1(*s);
            if (!m) return fail();
            const auto& a = std::get<Scale>(s->addends[m->i]->node());
            const auto& b = std::get<Scale>(s->addends[m->j]->node());
            return sum_replacing_pair(*s, m->i, m->j, mk_scale(a.coeff + b.coeff, a.body));
        }
        case RuleId::F2: {
            const auto* s = std::get_if<Sum>(&t->node());
            if (!s) return fail();
            auto m = sc.find_f2(*s);
            if (!m) return fail();
            const auto& a = std::get<Scale>(s->addends[m->i]->node());
            return sum_replacing_pair(*s, m->i, m->j, mk_scale(a.coeff + Scalar::one(), a.body));
        }
        case RuleId::F3: {
            const auto* s = std::get_if<Sum>(&t->node());
            if (!s) return fail();
            auto m = sc.find_f3(*s);
            if (!m) return fail();
            return sum_replacing_pair(*s, m->i, m->j,
                                      mk_scale(Scalar::one() + Scalar::one(), s->addends[m->i]));
        }
        case RuleId::A1: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a) return fail();
            const auto* s = std::get_if<Sum>(&a->fun->node());
            if (!s || !(sc.mode == Mode::Unrestricted || (sc.closed(a->fun) && sc.normal(a->fun))))
                return fail();
            std::vector<TermPtr> out;
            out.reserve(s->addends.size());
            for (const auto& f : s->addends) out.push_back(mk_app(f, a->arg));
            return mk_sum(std::move(out));
        }
        case RuleId::A2: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a) return fail();
            const auto* s = std::get_if<Sum>(&a->arg->node());
            if (!s || !(sc.mode == Mode::Unrestricted || (sc.closed(a->arg) && sc.normal(a->arg))))
                return fail();
            std::vector<TermPtr> out;
            out.reserve(s->addends.size());
            for (const auto& r : s->addends) out.push_back(mk_app(a->fun, r));
            return mk_sum(std::move(out));
        }
        case RuleId::A3: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a) return fail();
            const auto* s = std::get_if<Scale>(&a->fun->node());
            if (!s || !sc.star_ok(s->body)) return fail();
            return mk_scale(s->coeff, mk_app(s->body, a->arg));
        }
        case RuleId::A4: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a) return fail();
            const auto* s = std::get_if<Scale>(&a->arg->node());
            if (!s || !sc.star_ok(s->body)) return fail();
            return mk_scale(s->coeff, mk_app(a->fun, s->body));
        }
        case RuleId::A5: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a || !std::holds_alternative<Zero>(a->fun->node())) return fail();
            return mk_zero();
        }
        case RuleId::A6: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a || !std::holds_alternative<Zero>(a->arg->node())) return fail();
            return mk_zero();
        }
        case RuleId::B: {
            const auto* a = std::get_if<App>(&t->node());
            if (!a) return fail();
            const auto* f = std::get_if<Abs>(&a->fun->node());
            if (!f || !is_base(a->arg)) return fail();
            return substitute(f->body, f->binder, a->arg);
        }
    }
    return fail();
}

TermPtr step_impl(Scanner& sc, const TermPtr& t, const Path& pos, size_t idx, RuleId rule) {
    if (idx == pos.size()) return apply_rule(sc, t, rule);
    int i = pos[idx];
    return with_child(t, i, step_impl(sc, child(t, i), pos, idx + 1, rule));
}

}  // namespace

const char* rule_name(RuleId r) {
    switch (r) {
        case RuleId::E1: return "E1";
        case RuleId::E2: return "E2";
        case RuleId::E3: return "E3";
        case RuleId::E4: return "E4";
        case RuleId::E5: return "E5";
        case RuleId::E6: return "E6";
        case RuleId::F1: return "F1";
        case RuleId::F2: return "F2";
        case RuleId::F3: return "F3";
        case RuleId::A1: return "A1";
        case RuleId::A2: return "A2";
        case RuleId::A3: return "A3";
        case RuleId::A4: return "A4";
        case RuleId::A5: return "A5";
        case RuleId::A6: return "A6";
        case RuleId::B: return "B";
    }
    return "?";
}

std::string path_to_string(const Path& p) {
    if (p.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(p[i]);
    }
    return out;
}

std::vector<Redex> applicable_redexes(const TermPtr& t, Mode mode) {
    Scanner sc{mode, {}, {}};
    std::vector<Redex> out;
    Path path;
    sc.enumerate(t, path, out);
    return out;
}

std::optional<Redex> first_redex(const TermPtr& t, Mode mode) {
    Scanner sc{mode, {}, {}};
    return sc.find_first(t);
}

bool is_normal(const TermPtr& t, Mode mode) { return !first_redex(t, mode).has_value(); }

TermPtr step(const TermPtr& t, const Path& pos, RuleId rule, Mode mode) {
    Scanner sc{mode, {}, {}};
    return step_impl(sc, t, pos, 0, rule);
}

NormalizeResult normalize(const TermPtr& t, Mode mode, long fuel, bool record_trace) {
    NormalizeResult res;
    res.term = t;
    for (;;) {
        Scanner sc{mode, {}, {}};
        auto r = sc.find_first(res.term);
        if (!r) break;
        if (res.trace.fuel_used >= fuel) {
            res.trace.fuel_exhausted = true;
            break;
        }
        res.term = step_impl(sc, res.term, r->pos, 0, r->rule);
        ++res.trace.fuel_used;
        if (record_trace) res.trace.steps.push_back({r->pos, r->rule, res.term});
    }
    return res;
}

std::string print_trace(const ReductionTrace& trace, const PrintNames* names) {
    std::string out;
    long n = 1;
    for (const auto& s : trace.steps) {
        out += "STEP " + std::to_string(n++) + " @" + path_to_string(s.pos) + " " + rule_name(s.rule) +
               " => " + print_term(s.result, names) + "\n";
    }
    return out;
}

Scalar weight(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const Var&) { return Scalar::one(); },
                          [](const Abs&) { return Scalar::one(); },
                          [](const TyAbs& a) { return weight(a.body); },
                          [](const TyApp& a) { return weight(a.fun); },
                          [](const App& a) { return weight(a.fun) * weight(a.arg); },
                          [](const Zero&) { return Scalar::zero(); },
                          [](const Scale& s) { return s.coeff * weight(s.body); },
                          [](const Sum& s) {
                              Scalar acc = Scalar::zero();
                              for (const auto& a : s.addends) acc = acc + weight(a);
                              return acc;
                          },
                      },
                      t->node());
}

std::vector<std::pair<Scalar, TermPtr>> decompose_normal(const TermPtr& t) {
    std::vector<std::pair<Scalar, TermPtr>> out;
    auto take = [&](const TermPtr& addend) {
        if (std::holds_alternative<Abs>(addend->node())) {
            out.emplace_back(Scalar::one(), addend);
            return;
        }
        if (const auto* s = std::get_if<Scale>(&addend->node());
            s && std::holds_alternative<Abs>(s->body->node())) {
            out.emplace_back(s->coeff, s->body);
            return;
        }
        throw NotInCanonicalVectorForm("closed normal term is not a weighted sum of abstractions: " +
                                       print_term(addend));
    };
    if (std::holds_alternative<Zero>(t->node())) return out;
    if (const auto* s = std::get_if<Sum>(&t->node())) {
        for (const auto& a : s->addends) take(a);
        return out;
    }
    take(t);
    return out;
}

TermPtr subterm_at(const TermPtr& t, const Path& pos) {
    TermPtr cur = t;
    for (int i : pos) cur = child(cur, i);
    return cur;
}

}  // namespace lineal
