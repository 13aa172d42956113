#include "lineal/gen.hpp"

#include <optional>

namespace lineal {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

}  // namespace

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    // splitmix64 over the combined value
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

struct TypedGen {
    const GenConfig& cfg;
    Rng& rng;
    std::vector<std::pair<std::string, TypePtr>> env;  // binder -> unit annotation
    std::vector<std::string> tyscope;
    int fresh_ty = 0;
    int fresh_tm = 0;

    std::string fresh_tyvar() { return "T" + std::to_string(fresh_ty++); }
    std::string fresh_var() { return "v" + std::to_string(fresh_tm++); }

    Scalar rand_scalar(bool allow_zero) {
        long mag = std::max(1, cfg.max_scalar_magnitude);
        long num = rng.range(-mag, mag);
        if (!allow_zero && num == 0) num = 1;
        long den = rng.range(1, std::max<long>(1, mag / 2));
        return Scalar(Scalar::Int(num), Scalar::Int(den));
    }

    TypePtr gen_unit(int depth) {
        if (depth <= 0 || rng.chance(2, 5)) {
            std::vector<std::string> pool = {"U", "V"};
            pool.insert(pool.end(), tyscope.begin(), tyscope.end());
            return tvar(pool[rng.below(pool.size())]);
        }
        if (rng.chance(1, 4)) {
            std::string x = fresh_tyvar();
            tyscope.push_back(x);
            auto body = gen_unit(depth - 1);
            tyscope.pop_back();
            return tforall(x, body);
        }
        return tarrow(gen_unit(depth - 1), gen_codomain(depth - 1));
    }

    // Codomains may carry (nonzero) scalars; the zero type is kept out of
    // annotations so the forgetting map stays placeholder-free on them.
    TypePtr gen_codomain(int depth) {
        if (rng.chance(1, 3)) return tscale(rand_scalar(false), gen_unit(depth));
        return gen_unit(depth);
    }

    GeneratedTerm var_leaf(size_t idx) {
        const auto& [name, ann] = env[idx];
        return {mk_var(name), canonicalize(ann)};
    }

    GeneratedTerm zero_leaf() { return {mk_zero(gen_unit(1)), CanonicalType::make_zero()}; }

    GeneratedTerm leaf(int budget) {
        if (!env.empty() && rng.chance(3, 4)) return var_leaf(rng.below(env.size()));
        if (budget >= 3 && rng.chance(1, 2)) {
            std::string x = fresh_var();
            TypePtr u = gen_unit(1);
            return {mk_abs(x, u, mk_var(x)),
                    CanonicalType::make(Scalar::one(), canonicalize(tarrow(u, u)).unit)};
        }
        return zero_leaf();
    }

    std::optional<TermPtr> inhabit_type(const TypePtr& ty, int depth) {
        CanonicalType c = canonicalize(ty);
        if (c.zero) return mk_zero(gen_unit(1));
        auto u = inhabit_unit(c.unit, depth);
        if (!u) return std::nullopt;
        if (c.coeff.is_one()) return u;
        return mk_scale(c.coeff, *u);
    }

    // A term of type exactly (1, u); u is assumed canonical.
    std::optional<TermPtr> inhabit_unit(const TypePtr& u, int depth) {
        if (depth <= 0) return std::nullopt;
        return std::visit(
            overloaded{
                [&](const TVar& v) -> std::optional<TermPtr> {
                    for (size_t i = env.size(); i-- > 0;) {
                        auto c = canonicalize(env[i].second);
                        const auto* w = std::get_if<TVar>(&c.unit->node());
                        if (w && w->name == v.name) return mk_var(env[i].first);
                    }
                    return std::nullopt;
                },
                [&](const TArrow& a) -> std::optional<TermPtr> {
                    std::string x = fresh_var();
                    env.emplace_back(x, a.dom);
                    auto body = inhabit_type(a.cod, depth - 1);
                    env.pop_back();
                    if (!body) return std::nullopt;
                    return mk_abs(x, a.dom, *body);
                },
                [&](const TForall& f) -> std::optional<TermPtr> {
                    std::string x = fresh_tyvar();  // fresh: never escapes into the context
                    auto body_ty = subst_type(f.body, f.var, tvar(x));
                    auto body = inhabit_unit(canonicalize(body_ty).unit, depth - 1);
                    if (!body) return std::nullopt;
                    return mk_tyabs(x, *body);
                },
                [&](const auto&) -> std::optional<TermPtr> { return std::nullopt; },
            },
            u->node());
    }

    GeneratedTerm synth(int budget) {
        if (budget <= 2) return leaf(budget);
        switch (rng.below(12)) {
            case 0:
            case 1:  // abstraction
            {
                std::string x = fresh_var();
                TypePtr u = gen_unit(2);
                env.emplace_back(x, u);
                auto body = synth(budget - 1);
                env.pop_back();
                TypePtr raw = tarrow(u, readback(body.type));
                return {mk_abs(x, u, body.term), canonicalize(raw)};
            }
            case 2:
            case 3:
            case 4:  // beta-redex application
            {
                auto arg = synth((budget - 2) / 2);
                TypePtr dom = arg.type.zero ? gen_unit(2) : arg.type.unit;
                // zero-typed arguments stay plain so the System F checker can
                // adopt the domain for them
                if (arg.type.zero) arg.term = mk_zero();
                std::string x = fresh_var();
                env.emplace_back(x, dom);
                auto body = synth((budget - 2) / 2);
                env.pop_back();
                TermPtr fun = mk_abs(x, dom, body.term);
                CanonicalType ty = (arg.type.zero || body.type.zero)
                                       ? CanonicalType::make_zero()
                                       : CanonicalType::make(arg.type.coeff * body.type.coeff,
                                                             body.type.unit);
                return {mk_app(fun, arg.term), ty};
            }
            case 5:  // application of a context variable when one fits
            {
                for (size_t k = 0; k < env.size(); ++k) {
                    auto c = canonicalize(env[k].second);
                    const auto* arrow = std::get_if<TArrow>(&c.unit->node());
                    if (!arrow) continue;
                    auto arg = inhabit_unit(canonicalize(arrow->dom).unit, 3);
                    if (!arg) continue;
                    CanonicalType cod = canonicalize(arrow->cod);
                    return {mk_app(mk_var(env[k].first), *arg), cod};
                }
                return synth(budget - 1);
            }
            case 6:
            case 7:  // scaling
            {
                Scalar s = rand_scalar(rng.chance(1, 8));
                auto body = synth(budget - 1);
                CanonicalType ty = (s.is_zero() || body.type.zero)
                                       ? CanonicalType::make_zero()
                                       : CanonicalType::make(s * body.type.coeff, body.type.unit);
                return {mk_scale(s, body.term), ty};
            }
            case 8:
            case 9:  // sum
            {
                size_t extras = 1 + rng.below(2);
                auto first = synth((budget - 2) / static_cast<int>(extras + 1));
                std::vector<TermPtr> addends = {first.term};
                Scalar coeff = first.type.zero ? Scalar::zero() : first.type.coeff;
                TypePtr unit = first.type.zero ? nullptr : first.type.unit;
                for (size_t i = 0; i < extras; ++i) {
                    switch (rng.below(3)) {
                        case 0: {  // scaled copy of the first addend
                            Scalar d = rand_scalar(false);
                            addends.push_back(mk_scale(d, first.term));
                            if (!first.type.zero) coeff = coeff + d * first.type.coeff;
                            break;
                        }
                        case 1: {  // zero at the shared unit (plain when unknown)
                            addends.push_back(unit ? mk_zero(unit) : mk_zero());
                            break;
                        }
                        default: {  // independent addend if the unit matches
                            auto extra = synth((budget - 2) / static_cast<int>(extras + 1));
                            // a zero-typed first addend already committed a
                            // System F type; only copies of it stay coherent
                            bool fits = !extra.type.zero && !first.type.zero &&
                                        (!unit || alpha_equal_types(unit, extra.type.unit));
                            if (fits) {
                                addends.push_back(extra.term);
                                coeff = coeff + extra.type.coeff;
                                if (!unit) unit = extra.type.unit;
                            } else {
                                Scalar d = rand_scalar(false);
                                addends.push_back(mk_scale(d, first.term));
                                if (!first.type.zero) coeff = coeff + d * first.type.coeff;
                            }
                            break;
                        }
                    }
                }
                CanonicalType ty = (!unit || coeff.is_zero())
                                       ? CanonicalType::make_zero()
                                       : CanonicalType::make(coeff, unit);
                return {mk_sum(std::move(addends)), ty};
            }
            case 10:  // type abstraction
            {
                std::string x = fresh_tyvar();
                tyscope.push_back(x);
                auto body = synth(budget - 1);
                tyscope.pop_back();
                if (body.type.zero) return {mk_tyabs(x, body.term), body.type};
                return {mk_tyabs(x, body.term),
                        CanonicalType::make(body.type.coeff, tforall(x, body.type.unit))};
            }
            default:  // type application over a fresh type abstraction
            {
                std::string x = fresh_tyvar();
                tyscope.push_back(x);
                auto body = synth(budget - 2);
                tyscope.pop_back();
                TypePtr arg = gen_unit(2);
                TermPtr term = mk_tyapp(mk_tyabs(x, body.term), arg);
                if (body.type.zero) return {term, body.type};
                return {term, canonicalize(tscale(body.type.coeff,
                                                  subst_type(body.type.unit, x, arg)))};
            }
        }
    }
};

}  // namespace

GeneratedTerm gen_typed_term(const GenConfig& cfg, Rng& rng) {
    // Sum construction can overshoot the budget by a few nodes; retry until
    // the size bound holds (the rng advances, so retries differ).
    for (int attempt = 0; attempt < 32; ++attempt) {
        TypedGen g{cfg, rng, {}, {}, 0, 0};
        auto out = g.synth(std::max(3, cfg.max_term_size));
        if (term_size(out.term) <= static_cast<size_t>(std::max(3, cfg.max_term_size))) return out;
    }
    TypedGen g{cfg, rng, {}, {}, 0, 0};
    return g.leaf(2);
}

namespace {

TermPtr untyped_rec(const GenConfig& cfg, Rng& rng, int budget, std::vector<std::string>& scope) {
    if (budget <= 1) {
        if (!scope.empty() && rng.chance(3, 4)) return mk_var(scope[rng.below(scope.size())]);
        switch (rng.below(3)) {
            case 0: return mk_var("u");
            case 1: return mk_zero();
            default: return mk_var("w");
        }
    }
    switch (rng.below(10)) {
        case 0:
        case 1: {
            std::string x(1, static_cast<char>('a' + rng.below(4)));
            scope.push_back(x);
            auto body = untyped_rec(cfg, rng, budget - 1, scope);
            scope.pop_back();
            return mk_abs(x, body);
        }
        case 2:
        case 3:
            return mk_app(untyped_rec(cfg, rng, (budget - 1) / 2, scope),
                          untyped_rec(cfg, rng, (budget - 1) / 2, scope));
        case 4: {  // self-application shape
            std::string x(1, static_cast<char>('a' + rng.below(4)));
            scope.push_back(x);
            auto body = mk_app(mk_var(x), mk_var(x));
            auto inner = rng.chance(1, 2) ? mk_sum({untyped_rec(cfg, rng, budget - 4, scope), body}) : body;
            scope.pop_back();
            return mk_abs(x, inner);
        }
        case 5:
        case 6: {
            long mag = std::max(1, cfg.max_scalar_magnitude);
            long num = rng.range(-mag, mag);
            return mk_scale(Scalar(Scalar::Int(num), Scalar::Int(rng.range(1, 3))),
                            untyped_rec(cfg, rng, budget - 1, scope));
        }
        case 7:
        case 8: {
            std::vector<TermPtr> addends;
            size_t n = 2 + rng.below(2);
            for (size_t i = 0; i < n; ++i)
                addends.push_back(untyped_rec(cfg, rng, (budget - 1) / static_cast<int>(n), scope));
            return mk_sum(std::move(addends));
        }
        default:
            return mk_zero();
    }
}

}  // namespace

TermPtr gen_untyped_term(const GenConfig& cfg, Rng& rng) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<std::string> scope;
        auto t = untyped_rec(cfg, rng, std::max(3, cfg.max_term_size), scope);
        if (term_size(t) <= static_cast<size_t>(std::max(3, cfg.max_term_size))) return t;
    }
    return mk_zero();
}

namespace {

struct BaryGen {
    const GenConfig& cfg;
    Rng& rng;
    std::vector<std::pair<std::string, TypePtr>> env;  // classical bindings
    std::vector<std::string> tyscope;
    int fresh_ty = 0;
    int fresh_tm = 0;

    std::string fresh_tyvar() { return "T" + std::to_string(fresh_ty++); }
    std::string fresh_var() { return "v" + std::to_string(fresh_tm++); }

    Scalar nonzero_scalar() {
        long mag = std::max(1, cfg.max_scalar_magnitude);
        long num = rng.range(-mag, mag);
        if (num == 0) num = 2;
        return Scalar(Scalar::Int(num), Scalar::Int(rng.range(1, std::max<long>(1, mag / 2))));
    }

    TypePtr gen_classical(int depth) {
        if (depth <= 0 || rng.chance(2, 5)) {
            std::vector<std::string> pool = {"U", "V"};
            pool.insert(pool.end(), tyscope.begin(), tyscope.end());
            return tvar(pool[rng.below(pool.size())]);
        }
        if (rng.chance(1, 4)) {
            std::string x = fresh_tyvar();
            tyscope.push_back(x);
            auto body = gen_classical(depth - 1);
            tyscope.pop_back();
            return tforall(x, body);
        }
        return tarrow(gen_classical(depth - 1), gen_classical(depth - 1));
    }

    std::optional<TermPtr> inhabit(const TypePtr& c, int depth) {
        if (depth <= 0) return std::nullopt;
        return std::visit(
            overloaded{
                [&](const TVar& v) -> std::optional<TermPtr> {
                    for (size_t i = env.size(); i-- > 0;) {
                        const auto* w = std::get_if<TVar>(&env[i].second->node());
                        if (w && w->name == v.name) return mk_var(env[i].first);
                    }
                    return std::nullopt;
                },
                [&](const TArrow& a) -> std::optional<TermPtr> {
                    std::string x = fresh_var();
                    env.emplace_back(x, a.dom);
                    auto body = inhabit(a.cod, depth - 1);
                    env.pop_back();
                    if (!body) return std::nullopt;
                    return mk_abs(x, a.dom, *body);
                },
                [&](const TForall& f) -> std::optional<TermPtr> {
                    std::string x = fresh_tyvar();
                    auto body = inhabit(subst_type(f.body, f.var, tvar(x)), depth - 1);
                    if (!body) return std::nullopt;
                    return mk_tyabs(x, *body);
                },
                [&](const auto&) -> std::optional<TermPtr> { return std::nullopt; },
            },
            c->node());
    }

    // (term, classical type); the canonical type is (1, type) throughout.
    std::pair<TermPtr, TypePtr> gen(int budget) {
        if (budget <= 2) {
            if (!env.empty() && rng.chance(3, 4)) {
                size_t i = rng.below(env.size());
                return {mk_var(env[i].first), env[i].second};
            }
            TypePtr c = gen_classical(1);
            std::string x = fresh_var();
            return {mk_abs(x, c, mk_var(x)), tarrow(c, c)};
        }
        switch (rng.below(10)) {
            case 0:
            case 1: {  // abstraction
                TypePtr c = gen_classical(2);
                std::string x = fresh_var();
                env.emplace_back(x, c);
                auto [body, d] = gen(budget - 1);
                env.pop_back();
                return {mk_abs(x, c, body), tarrow(c, d)};
            }
            case 2:
            case 3: {  // plain application via a built function
                auto [arg, c] = gen((budget - 2) / 2);
                std::string x = fresh_var();
                env.emplace_back(x, c);
                auto [body, d] = gen((budget - 2) / 2);
                env.pop_back();
                return {mk_app(mk_abs(x, c, body), arg), d};
            }
            case 4:
            case 5: {  // compensated scaling: (g.f) (1/g.a)
                auto [arg, c] = gen((budget - 4) / 2);
                std::string x = fresh_var();
                env.emplace_back(x, c);
                auto [body, d] = gen((budget - 4) / 2);
                env.pop_back();
                Scalar g = nonzero_scalar();
                return {mk_app(mk_scale(g, mk_abs(x, c, body)), mk_scale(g.reciprocal(), arg)), d};
            }
            case 6:
            case 7: {  // barycentric combination: weights summing to one
                auto [first, c] = gen((budget - 3) / 2);
                size_t k = 2 + rng.below(2);
                std::vector<Scalar> w;
                Scalar acc = Scalar::zero();
                for (size_t i = 0; i + 1 < k; ++i) {
                    Scalar wi(Scalar::Int(rng.range(-3, 4)), Scalar::Int(rng.range(1, 4)));
                    w.push_back(wi);
                    acc = acc + wi;
                }
                w.push_back(Scalar::one() - acc);
                std::vector<TermPtr> addends;
                for (size_t i = 0; i < k; ++i) {
                    TermPtr base = first;
                    if (i > 0 && rng.chance(1, 3)) {
                        if (auto other = inhabit(c, 3)) base = *other;
                    }
                    addends.push_back(mk_scale(w[i], base));
                }
                if (rng.chance(1, 4)) addends.push_back(mk_zero(c));
                return {mk_sum(std::move(addends)), c};
            }
            case 8: {  // type abstraction + application
                std::string x = fresh_tyvar();
                tyscope.push_back(x);
                auto [body, d] = gen(budget - 2);
                tyscope.pop_back();
                TypePtr arg = gen_classical(1);
                return {mk_tyapp(mk_tyabs(x, body), arg),
                        subst_type(d, x, arg)};
            }
            default: {
                TypePtr c = gen_classical(2);
                std::string x = fresh_var();
                env.emplace_back(x, c);
                auto [body, d] = gen(budget - 1);
                env.pop_back();
                return {mk_abs(x, c, body), tarrow(c, d)};
            }
        }
    }
};

}  // namespace

GeneratedTerm gen_bary_term(const GenConfig& cfg, Rng& rng) {
    BaryGen g{cfg, rng, {}, {}, 0, 0};
    auto [term, ty] = g.gen(std::max(3, cfg.max_term_size));
    return {term, CanonicalType::make(Scalar::one(), canonicalize(ty).unit)};
}

TypePtr gen_type(const GenConfig& cfg, Rng& rng, int depth) {
    if (depth <= 0) {
        if (rng.chance(1, 5)) return tzero();
        return tvar(std::string(1, static_cast<char>('X' + rng.below(3))));
    }
    switch (rng.below(5)) {
        case 0:
            return tvar(std::string(1, static_cast<char>('X' + rng.below(3))));
        case 1: {
            // unit domain: re-roll until the unit branch comes up
            TypePtr dom;
            do {
                dom = gen_type(cfg, rng, depth - 1);
            } while (!is_unit(dom));
            return tarrow(dom, gen_type(cfg, rng, depth - 1));
        }
        case 2:
            return tforall(std::string(1, static_cast<char>('X' + rng.below(3))),
                           gen_type(cfg, rng, depth - 1));
        case 3: {
            long mag = std::max(1, cfg.max_scalar_magnitude);
            return tscale(Scalar(Scalar::Int(rng.range(-mag, mag)), Scalar::Int(rng.range(1, 4))),
                          gen_type(cfg, rng, depth - 1));
        }
        default:
            return tzero();
    }
}

namespace {

TypePtr variant_unit(const TypePtr& u, Rng& rng);

TypePtr variant_codomain(const TypePtr& t, Rng& rng) {
    // equivalence-preserving rewrites, legal anywhere right of an arrow
    if (rng.chance(1, 4)) return tscale(Scalar::one(), variant_codomain(t, rng));
    return std::visit(
        overloaded{
            [&](const TVar&) { return t; },
            [&](const TArrow&) { return variant_unit(t, rng); },
            [&](const TForall& f) -> TypePtr {
                if (const auto* s = std::get_if<TScale>(&f.body->node()); s && rng.chance(1, 2))
                    return tscale(s->coeff, tforall(f.var, variant_codomain(s->body, rng)));
                return tforall(f.var, variant_codomain(f.body, rng));
            },
            [&](const TScale& s) -> TypePtr {
                if (const auto* f = std::get_if<TForall>(&s.body->node()); f && rng.chance(1, 2))
                    return tforall(f->var, tscale(s.coeff, variant_codomain(f->body, rng)));
                if (rng.chance(1, 2) && !s.coeff.is_zero()) {
                    // split the coefficient across two nested scalings
                    Scalar g(Scalar::Int(rng.range(1, 5)), Scalar::Int(rng.range(1, 3)));
                    return tscale(g, tscale(s.coeff * g.reciprocal(), variant_codomain(s.body, rng)));
                }
                return tscale(s.coeff, variant_codomain(s.body, rng));
            },
            [&](const TZero&) { return t; },
        },
        t->node());
}

TypePtr variant_unit(const TypePtr& u, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const TVar&) { return u; },
            [&](const TArrow& a) { return tarrow(variant_unit(a.dom, rng), variant_codomain(a.cod, rng)); },
            [&](const TForall& f) { return tforall(f.var, variant_unit(f.body, rng)); },
            [&](const auto&) { return u; },
        },
        u->node());
}

}  // namespace

TermPtr annotation_variant(const TermPtr& t, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const Var&) { return t; },
            [&](const Abs& a) {
                return mk_abs(a.binder, a.ann ? variant_unit(a.ann, rng) : nullptr,
                              annotation_variant(a.body, rng));
            },
            [&](const TyAbs& a) { return mk_tyabs(a.var, annotation_variant(a.body, rng)); },
            [&](const TyApp& a) {
                return mk_tyapp(annotation_variant(a.fun, rng), variant_unit(a.arg, rng));
            },
            [&](const App& a) {
                return mk_app(annotation_variant(a.fun, rng), annotation_variant(a.arg, rng));
            },
            [&](const Zero&) { return t; },
            [&](const Scale& s) { return mk_scale(s.coeff, annotation_variant(s.body, rng)); },
            [&](const Sum& s) {
                std::vector<TermPtr> addends;
                for (const auto& a : s.addends) addends.push_back(annotation_variant(a, rng));
                return mk_sum(std::move(addends));
            },
        },
        t->node());
}

}  // namespace lineal
