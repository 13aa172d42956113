#include "lineal/transport.hpp"

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

// Annotated redex scanning. Erasures are cached per node; the (*) and (**)
// side conditions are evaluated on them with the erased-term engine.
struct AnnScanner {
    Mode mode;
    std::unordered_map<const Term*, TermPtr> erased_memo;
    std::unordered_map<const Term*, bool> star_memo;

    const TermPtr& erased(const TermPtr& t) {
        auto it = erased_memo.find(t.get());
        if (it != erased_memo.end()) return it->second;
        return erased_memo.emplace(t.get(), erase(t)).first->second;
    }

    bool erased_equal(const TermPtr& a, const TermPtr& b) { return alpha_equal(erased(a), erased(b)); }

    bool star_ok(const TermPtr& t) {
        if (mode == Mode::Unrestricted) return true;
        auto it = star_memo.find(t.get());
        if (it != star_memo.end()) return it->second;
        const TermPtr& e = erased(t);
        bool r = is_closed(e) && is_normal(e, mode);
        star_memo.emplace(t.get(), r);
        return r;
    }

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
                if (b && erased_equal(a->body, b->body) && star_ok(a->body)) return SumMatch{i, j};
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
                if (erased_equal(a->body, s.addends[j]) && star_ok(a->body)) return SumMatch{i, j};
            }
        }
        return std::nullopt;
    }

    std::optional<SumMatch> find_f3(const Sum& s) {
        for (size_t i = 0; i + 1 < s.addends.size(); ++i)
            for (size_t j = i + 1; j < s.addends.size(); ++j)
                if (erased_equal(s.addends[i], s.addends[j]) && star_ok(s.addends[i]))
                    return SumMatch{i, j};
        return std::nullopt;
    }

    void rules_at(const TermPtr& t, std::vector<AnnRedex>& out, const Path& pos) {
        auto term_rule = [&](RuleId r) { out.push_back({pos, false, r, AdminRule::TyBeta}); };
        auto admin = [&](AdminRule r) { out.push_back({pos, true, RuleId::E1, r}); };
        if (const auto* s = std::get_if<Sum>(&t->node())) {
            if (find_zero_addend(*s)) term_rule(RuleId::E1);
            if (find_f1(*s)) term_rule(RuleId::F1);
            if (find_f2(*s)) term_rule(RuleId::F2);
            if (find_f3(*s)) term_rule(RuleId::F3);
        } else if (const auto* s = std::get_if<Scale>(&t->node())) {
            if (s->coeff.is_zero()) term_rule(RuleId::E2);
            if (s->coeff.is_one()) term_rule(RuleId::E3);
            if (std::holds_alternative<Zero>(s->body->node())) term_rule(RuleId::E4);
            if (std::holds_alternative<Scale>(s->body->node())) term_rule(RuleId::E5);
            if (std::holds_alternative<Sum>(s->body->node())) term_rule(RuleId::E6);
        } else if (const auto* a = std::get_if<App>(&t->node())) {
            if (std::holds_alternative<Sum>(a->fun->node()) &&
                (mode == Mode::Unrestricted || star_ok(a->fun)))
                term_rule(RuleId::A1);
            if (std::holds_alternative<Sum>(a->arg->node()) &&
                (mode == Mode::Unrestricted || star_ok(a->arg)))
                term_rule(RuleId::A2);
            if (const auto* sc = std::get_if<Scale>(&a->fun->node()); sc && star_ok(sc->body))
                term_rule(RuleId::A3);
            if (const auto* sc = std::get_if<Scale>(&a->arg->node()); sc && star_ok(sc->body))
                term_rule(RuleId::A4);
            if (std::holds_alternative<Zero>(a->fun->node())) term_rule(RuleId::A5);
            if (std::holds_alternative<Zero>(a->arg->node())) term_rule(RuleId::A6);
            if (std::holds_alternative<Abs>(a->fun->node()) && is_base(a->arg)) term_rule(RuleId::B);
        } else if (const auto* ta = std::get_if<TyApp>(&t->node())) {
            if (std::holds_alternative<TyAbs>(ta->fun->node())) admin(AdminRule::TyBeta);
            if (std::holds_alternative<Sum>(ta->fun->node())) admin(AdminRule::TyAppSum);
            if (std::holds_alternative<Scale>(ta->fun->node())) admin(AdminRule::TyAppScale);
            if (std::holds_alternative<Zero>(ta->fun->node())) admin(AdminRule::TyAppZero);
        } else if (const auto* tl = std::get_if<TyAbs>(&t->node())) {
            if (std::holds_alternative<Sum>(tl->body->node())) admin(AdminRule::TyAbsSum);
            if (std::holds_alternative<Scale>(tl->body->node())) admin(AdminRule::TyAbsScale);
            if (std::holds_alternative<Zero>(tl->body->node())) admin(AdminRule::TyAbsZero);
        }
    }

    void enumerate(const TermPtr& t, Path& path, std::vector<AnnRedex>& out) {
        rules_at(t, out, path);
        int n = child_count(t);
        for (int i = 0; i < n; ++i) {
            path.push_back(i);
            enumerate(child(t, i), path, out);
            path.pop_back();
        }
    }

    TermPtr apply(const TermPtr& t, const AnnRedex& r) {
        auto fail = []() -> TermPtr { throw std::logic_error("annotated rule not applicable"); };
        if (r.admin) {
            switch (r.admin_rule) {
                case AdminRule::TyBeta: {
                    const auto* ta = std::get_if<TyApp>(&t->node());
                    if (!ta) return fail();
                    const auto* tl = std::get_if<TyAbs>(&ta->fun->node());
                    if (!tl) return fail();
                    return subst_type_in_term(tl->body, tl->var, ta->arg);
                }
                case AdminRule::TyAppSum: {
                    const auto* ta = std::get_if<TyApp>(&t->node());
                    const auto* s = ta ? std::get_if<Sum>(&ta->fun->node()) : nullptr;
                    if (!s) return fail();
                    std::vector<TermPtr> out;
                    for (const auto& a : s->addends) out.push_back(mk_tyapp(a, ta->arg));
                    return mk_sum(std::move(out));
                }
                case AdminRule::TyAppScale: {
                    const auto* ta = std::get_if<TyApp>(&t->node());
                    const auto* s = ta ? std::get_if<Scale>(&ta->fun->node()) : nullptr;
                    if (!s) return fail();
                    return mk_scale(s->coeff, mk_tyapp(s->body, ta->arg));
                }
                case AdminRule::TyAppZero:
                case AdminRule::TyAbsZero:
                    return mk_zero();
                case AdminRule::TyAbsSum: {
                    const auto* tl = std::get_if<TyAbs>(&t->node());
                    const auto* s = tl ? std::get_if<Sum>(&tl->body->node()) : nullptr;
                    if (!s) return fail();
                    std::vector<TermPtr> out;
                    for (const auto& a : s->addends) out.push_back(mk_tyabs(tl->var, a));
                    return mk_sum(std::move(out));
                }
                case AdminRule::TyAbsScale: {
                    const auto* tl = std::get_if<TyAbs>(&t->node());
                    const auto* s = tl ? std::get_if<Scale>(&tl->body->node()) : nullptr;
                    if (!s) return fail();
                    return mk_scale(s->coeff, mk_tyabs(tl->var, s->body));
                }
            }
            return fail();
        }
        switch (r.rule) {
            case RuleId::E1: {
                const auto* s = std::get_if<Sum>(&t->node());
                if (!s) return fail();
                auto i = find_zero_addend(*s);
                if (!i) return fail();
                std::vector<TermPtr> out;
                for (size_t k = 0; k < s->addends.size(); ++k)
                    if (k != *i) out.push_back(s->addends[k]);
                return mk_sum(std::move(out));
            }
            case RuleId::E2:
            case RuleId::E4:
                return mk_zero();
            case RuleId::E3: {
                const auto* s = std::get_if<Scale>(&t->node());
                if (!s || !s->coeff.is_one()) return fail();
                return s->body;
            }
            case RuleId::E5: {
                const auto* s = std::get_if<Scale>(&t->node());
                const auto* inner = s ? std::get_if<Scale>(&s->body->node()) : nullptr;
                if (!inner) return fail();
                return mk_scale(s->coeff * inner->coeff, inner->body);
            }
            case RuleId::E6: {
                const auto* s = std::get_if<Scale>(&t->node());
                const auto* inner = s ? std::get_if<Sum>(&s->body->node()) : nullptr;
                if (!inner) return fail();
                std::vector<TermPtr> out;
                for (const auto& a : inner->addends) out.push_back(mk_scale(s->coeff, a));
                return mk_sum(std::move(out));
            }
            case RuleId::F1: {
                const auto* s = std::get_if<Sum>(&t->node());
                if (!s) return fail();
                auto m = find_f1(*s);
                if (!m) return fail();
                const auto& a = std::get<Scale>(s->addends[m->i]->node());
                const auto& b = std::get<Scale>(s->addends[m->j]->node());
                return replace_pair(*s, m->i, m->j, mk_scale(a.coeff + b.coeff, a.body));
            }
            case RuleId::F2: {
                const auto* s = std::get_if<Sum>(&t->node());
                if (!s) return fail();
                auto m = find_f2(*s);
                if (!m) return fail();
                const auto& a = std::get<Scale>(s->addends[m->i]->node());
                return replace_pair(*s, m->i, m->j, mk_scale(a.coeff + Scalar::one(), a.body));
            }
            case RuleId::F3: {
                const auto* s = std::get_if<Sum>(&t->node());
                if (!s) return fail();
                auto m = find_f3(*s);
                if (!m) return fail();
                return replace_pair(*s, m->i, m->j,
                                    mk_scale(Scalar::one() + Scalar::one(), s->addends[m->i]));
            }
            case RuleId::A1: {
                const auto* a = std::get_if<App>(&t->node());
                const auto* s = a ? std::get_if<Sum>(&a->fun->node()) : nullptr;
                if (!s) return fail();
                std::vector<TermPtr> out;
                for (const auto& f : s->addends) out.push_back(mk_app(f, a->arg));
                return mk_sum(std::move(out));
            }
            case RuleId::A2: {
                const auto* a = std::get_if<App>(&t->node());
                const auto* s = a ? std::get_if<Sum>(&a->arg->node()) : nullptr;
                if (!s) return fail();
                std::vector<TermPtr> out;
                for (const auto& x : s->addends) out.push_back(mk_app(a->fun, x));
                return mk_sum(std::move(out));
            }
            case RuleId::A3: {
                const auto* a = std::get_if<App>(&t->node());
                const auto* s = a ? std::get_if<Scale>(&a->fun->node()) : nullptr;
                if (!s) return fail();
                return mk_scale(s->coeff, mk_app(s->body, a->arg));
            }
            case RuleId::A4: {
                const auto* a = std::get_if<App>(&t->node());
                const auto* s = a ? std::get_if<Scale>(&a->arg->node()) : nullptr;
                if (!s) return fail();
                return mk_scale(s->coeff, mk_app(a->fun, s->body));
            }
            case RuleId::A5:
            case RuleId::A6:
                return mk_zero();
            case RuleId::B: {
                const auto* a = std::get_if<App>(&t->node());
                const auto* f = a ? std::get_if<Abs>(&a->fun->node()) : nullptr;
                if (!f || !is_base(a->arg)) return fail();
                return substitute(f->body, f->binder, a->arg);
            }
        }
        return fail();
    }

    static TermPtr replace_pair(const Sum& s, size_t i, size_t j, TermPtr repl) {
        std::vector<TermPtr> out;
        for (size_t k = 0; k < s.addends.size(); ++k)
            if (k != i && k != j) out.push_back(s.addends[k]);
        out.push_back(std::move(repl));
        return mk_sum(std::move(out));
    }

    TermPtr step_at(const TermPtr& t, const Path& pos, size_t idx, const AnnRedex& r) {
        if (idx == pos.size()) return apply(t, r);
        int i = pos[idx];
        return with_child(t, i, step_at(child(t, i), pos, idx + 1, r));
    }
};

}  // namespace

const char* admin_rule_name(AdminRule r) {
    switch (r) {
        case AdminRule::TyBeta: return "TyBeta";
        case AdminRule::TyAppSum: return "TyAppSum";
        case AdminRule::TyAppScale: return "TyAppScale";
        case AdminRule::TyAppZero: return "TyAppZero";
        case AdminRule::TyAbsSum: return "TyAbsSum";
        case AdminRule::TyAbsScale: return "TyAbsScale";
        case AdminRule::TyAbsZero: return "TyAbsZero";
    }
    return "?";
}

TermPtr admin_normalize(const TermPtr& t) {
    TermPtr cur = t;
    for (;;) {
        AnnScanner sc{Mode::Unrestricted, {}, {}};
        std::vector<AnnRedex> rs;
        Path path;
        sc.enumerate(cur, path, rs);
        const AnnRedex* first_admin = nullptr;
        for (const auto& r : rs)
            if (r.admin) {
                first_admin = &r;
                break;
            }
        if (!first_admin) return cur;
        cur = sc.step_at(cur, first_admin->pos, 0, *first_admin);
    }
}

std::vector<AnnRedex> annotated_redexes(const TermPtr& t, Mode mode) {
    AnnScanner sc{mode, {}, {}};
    std::vector<AnnRedex> out;
    Path path;
    sc.enumerate(t, path, out);
    return out;
}

TermPtr annotated_step(const TermPtr& t, const AnnRedex& r, Mode mode) {
    AnnScanner sc{mode, {}, {}};
    return sc.step_at(t, r.pos, 0, r);
}

}  // namespace lineal
