#include "lineal/typecheck.hpp"

#include <algorithm>
#include <optional>

#include "json.hpp"

namespace lineal {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

}  // namespace

Context::Context(std::vector<std::pair<std::string, TypePtr>> bindings) : bindings_(std::move(bindings)) {
    for (const auto& [name, ty] : bindings_)
        if (!is_unit(ty))
            throw TypeError(Errc::NonUnitAnnotation, "context binding " + name + " is not a unit type");
}

const TypePtr* Context::lookup(const std::string& name) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
        if (it->first == name) return &it->second;
    return nullptr;
}

Context Context::extended(const std::string& name, TypePtr type) const {
    Context out = *this;
    for (auto& b : out.bindings_) {
        if (b.first == name) {
            b.second = std::move(type);
            return out;
        }
    }
    out.bindings_.emplace_back(name, std::move(type));
    return out;
}

std::set<std::string> Context::free_type_vars() const {
    std::set<std::string> out;
    for (const auto& [name, ty] : bindings_) {
        auto fv = lineal::free_type_vars(ty);
        out.insert(fv.begin(), fv.end());
    }
    return out;
}

bool Context::classical() const {
    for (const auto& [name, ty] : bindings_)
        if (!is_classical(ty)) return false;
    return true;
}

std::string Context::to_string(const TypeAliases* aliases) const {
    std::string out;
    for (size_t i = 0; i < bindings_.size(); ++i) {
        if (i) out += ", ";
        out += bindings_[i].first + ":" + print_type(bindings_[i].second, aliases);
    }
    return out;
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnboundVariable: return "UnboundVariable";
        case Errc::NotAnArrow: return "NotAnArrow";
        case Errc::NotAForall: return "NotAForall";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::SumUnitMismatch: return "SumUnitMismatch";
        case Errc::ForallEscape: return "ForallEscape";
        case Errc::MissingAnnotation: return "MissingAnnotation";
        case Errc::NonUnitAnnotation: return "NonUnitAnnotation";
        case Errc::MissingZeroAnnotation: return "MissingZeroAnnotation";
        case Errc::NonClassicalContext: return "NonClassicalContext";
        case Errc::NonClassicalTypeApplication: return "NonClassicalTypeApplication";
        case Errc::AscriptionMismatch: return "AscriptionMismatch";
    }
    return "?";
}

const char* rule_label_name(RuleLabel r) {
    switch (r) {
        case RuleLabel::Ax: return "ax";
        case RuleLabel::Equiv: return "equiv";
        case RuleLabel::ArrowE: return "->E";
        case RuleLabel::ArrowI: return "->I";
        case RuleLabel::ForallE: return "forallE";
        case RuleLabel::ForallI: return "forallI";
        case RuleLabel::AxZero: return "ax0";
        case RuleLabel::SumI: return "+I";
        case RuleLabel::ScaleI: return "sI";
    }
    return "?";
}

int Derivation::size() const {
    if (rule == RuleLabel::Equiv) return premises.empty() ? 0 : premises.front()->size();
    int m = 0;
    for (const auto& p : premises) m = std::max(m, p->size());
    return m + 1;
}

bool derivation_equal(const DerivPtr& a, const DerivPtr& b) {
    if (!a || !b) return a == b;
    if (a->rule != b->rule) return false;
    if (!alpha_equal(a->term, b->term)) return false;
    if (!alpha_equal_types(a->type, b->type)) return false;
    if (a->premises.size() != b->premises.size()) return false;
    const auto& ba = a->ctx.bindings();
    const auto& bb = b->ctx.bindings();
    if (ba.size() != bb.size()) return false;
    for (size_t i = 0; i < ba.size(); ++i)
        if (ba[i].first != bb[i].first || !alpha_equal_types(ba[i].second, bb[i].second)) return false;
    for (size_t i = 0; i < a->premises.size(); ++i)
        if (!derivation_equal(a->premises[i], b->premises[i])) return false;
    return true;
}

namespace {

std::string sequent_string(const Derivation& d, const TypeAliases* aliases) {
    std::string out = d.ctx.to_string(aliases);
    if (!out.empty()) out += ' ';
    out += "|- " + print_term(d.term) + " : " + print_type(d.type, aliases);
    return out;
}

void print_deriv_rec(std::string& out, const DerivPtr& d, int depth, const TypeAliases* aliases) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += rule_label_name(d->rule);
    out += "  ";
    out += sequent_string(*d, aliases);
    out += '\n';
    for (const auto& p : d->premises) print_deriv_rec(out, p, depth + 1, aliases);
}

nlohmann::json deriv_json(const DerivPtr& d) {
    nlohmann::json j;
    j["rule"] = rule_label_name(d->rule);
    j["context"] = d->ctx.to_string();
    j["term"] = print_term(d->term);
    j["type"] = print_type(d->type);
    auto children = nlohmann::json::array();
    for (const auto& p : d->premises) children.push_back(deriv_json(p));
    j["children"] = std::move(children);
    return j;
}

}  // namespace

std::string print_derivation(const DerivPtr& d, const TypeAliases* aliases) {
    std::string out;
    print_deriv_rec(out, d, 0, aliases);
    return out;
}

std::string derivation_export(const DerivPtr& d) { return deriv_json(d).dump(2); }

namespace {

struct ScalarChecker {
    bool bary = false;

    DerivPtr conclude(RuleLabel rule, const Context& ctx, const TermPtr& term, const TypePtr& raw,
                      std::vector<DerivPtr> premises, CanonicalType& canon_out) const {
        canon_out = canonicalize(raw);
        auto node = std::make_shared<Derivation>(Derivation{rule, ctx, term, raw, std::move(premises)});
        TypePtr shown = readback(canon_out);
        if (!alpha_equal_types(shown, raw))
            return std::make_shared<Derivation>(
                Derivation{RuleLabel::Equiv, ctx, term, shown, {std::move(node)}});
        return node;
    }

    Inferred infer(const Context& ctx, const TermPtr& t) const {
        return std::visit(
            overloaded{
                [&](const Var& v) -> Inferred {
                    const TypePtr* u = ctx.lookup(v.name);
                    if (!u) throw TypeError(Errc::UnboundVariable, v.name);
                    CanonicalType c;
                    auto d = conclude(RuleLabel::Ax, ctx, t, *u, {}, c);
                    return {c, d};
                },
                [&](const Abs& a) -> Inferred {
                    if (!a.ann)
                        throw TypeError(Errc::MissingAnnotation,
                                        "binder " + a.binder + " in " + print_term(t));
                    if (!is_unit(a.ann))
                        throw TypeError(Errc::NonUnitAnnotation,
                                        "binder " + a.binder + " : " + print_type(a.ann));
                    if (bary && !is_classical(a.ann))
                        throw TypeError(Errc::NonClassicalContext,
                                        "binder " + a.binder + " : " + print_type(a.ann) +
                                            " enters the context but is not classical");
                    auto body = infer(ctx.extended(a.binder, a.ann), a.body);
                    TypePtr raw = tarrow(a.ann, readback(body.type));
                    CanonicalType c;
                    auto d = conclude(RuleLabel::ArrowI, ctx, t, raw, {body.deriv}, c);
                    return {c, d};
                },
                [&](const TyAbs& a) -> Inferred {
                    if (ctx.free_type_vars().count(a.var))
                        throw TypeError(Errc::ForallEscape,
                                        a.var + " appears free in the context");
                    auto body = infer(ctx, a.body);
                    TypePtr raw = tforall(a.var, readback(body.type));
                    CanonicalType c;
                    auto d = conclude(RuleLabel::ForallI, ctx, t, raw, {body.deriv}, c);
                    return {c, d};
                },
                [&](const TyApp& a) -> Inferred {
                    if (!is_unit(a.arg))
                        throw TypeError(Errc::NonUnitAnnotation,
                                        "type application argument " + print_type(a.arg));
                    if (bary && !is_classical(a.arg))
                        throw TypeError(Errc::NonClassicalTypeApplication, print_type(a.arg));
                    auto fun = infer(ctx, a.fun);
                    TypePtr raw;
                    if (fun.type.zero) {
                        raw = tzero();  // Zero == forall X. Zero
                    } else if (const auto* f = std::get_if<TForall>(&fun.type.unit->node())) {
                        raw = tscale(fun.type.coeff, subst_type(f->body, f->var, a.arg));
                    } else {
                        throw TypeError(Errc::NotAForall,
                                        print_term(a.fun) + " : " + print_type(readback(fun.type)));
                    }
                    CanonicalType c;
                    auto d = conclude(RuleLabel::ForallE, ctx, t, raw, {fun.deriv}, c);
                    return {c, d};
                },
                [&](const App& a) -> Inferred {
                    auto fun = infer(ctx, a.fun);
                    auto arg = infer(ctx, a.arg);
                    TypePtr raw;
                    if (fun.type.zero || arg.type.zero) {
                        // Zero is 0.(U -> T) resp. 0.U for whatever the rule
                        // needs; the application collapses to Zero.
                        if (!fun.type.zero && !std::holds_alternative<TArrow>(fun.type.unit->node()))
                            throw TypeError(Errc::NotAnArrow,
                                            print_term(a.fun) + " : " + print_type(readback(fun.type)));
                        raw = tzero();
                    } else {
                        const auto* arrow = std::get_if<TArrow>(&fun.type.unit->node());
                        if (!arrow)
                            throw TypeError(Errc::NotAnArrow,
                                            print_term(a.fun) + " : " + print_type(readback(fun.type)));
                        if (!alpha_equal_types(arrow->dom, arg.type.unit))
                            throw TypeError(Errc::DomainMismatch,
                                            "expected " + print_type(arrow->dom) + ", got " +
                                                print_type(arg.type.unit) + " in " + print_term(t));
                        raw = tscale(fun.type.coeff * arg.type.coeff, arrow->cod);
                    }
                    CanonicalType c;
                    auto d = conclude(RuleLabel::ArrowE, ctx, t, raw, {fun.deriv, arg.deriv}, c);
                    return {c, d};
                },
                [&](const Zero&) -> Inferred {
                    CanonicalType c;
                    auto d = conclude(RuleLabel::AxZero, ctx, t, tzero(), {}, c);
                    return {c, d};
                },
                [&](const Scale& s) -> Inferred {
                    auto body = infer(ctx, s.body);
                    TypePtr raw = tscale(s.coeff, readback(body.type));
                    CanonicalType c;
                    auto d = conclude(RuleLabel::ScaleI, ctx, t, raw, {body.deriv}, c);
                    return {c, d};
                },
                [&](const Sum& s) -> Inferred {
                    std::vector<DerivPtr> premises;
                    premises.reserve(s.addends.size());
                    Scalar coeff = Scalar::zero();
                    TypePtr unit;  // first non-zero addend's canonical unit
                    for (const auto& addend : s.addends) {
                        auto p = infer(ctx, addend);
                        premises.push_back(p.deriv);
                        if (p.type.zero) continue;  // Zero == 0.T for every T
                        coeff = coeff + p.type.coeff;
                        if (!unit) {
                            unit = p.type.unit;
                        } else if (!alpha_equal_types(unit, p.type.unit)) {
                            throw TypeError(Errc::SumUnitMismatch,
                                            print_type(unit) + " vs " + print_type(p.type.unit) +
                                                " in " + print_term(t));
                        }
                    }
                    TypePtr raw = unit ? tscale(coeff, unit) : tzero();
                    CanonicalType c;
                    auto d = conclude(RuleLabel::SumI, ctx, t, raw, std::move(premises), c);
                    return {c, d};
                },
            },
            t->node());
    }
};

}  // namespace

Inferred infer_scalar(const Context& ctx, const TermPtr& t) { return ScalarChecker{false}.infer(ctx, t); }

BaryResult check_barycentric(const Context& ctx, const TermPtr& t) {
    if (!ctx.classical())
        throw TypeError(Errc::NonClassicalContext, "context {" + ctx.to_string() + "}");
    auto inf = ScalarChecker{true}.infer(ctx, t);
    bool ok = !inf.type.zero && inf.type.coeff.is_one() && is_classical(inf.type.unit);
    return {ok, inf.type, inf.deriv};
}

namespace {

bool is_placeholder(const TypePtr& t) {
    const auto* v = std::get_if<TVar>(&t->node());
    return v && !v->name.empty() && v->name[0] == '?';
}

TypePtr forget_impl(const TypePtr& t, int& counter) {
    return std::visit(
        overloaded{
            [&](const TVar&) { return t; },
            [&](const TArrow& a) { return tarrow(forget_impl(a.dom, counter), forget_impl(a.cod, counter)); },
            [&](const TForall& f) { return tforall(f.var, forget_impl(f.body, counter)); },
            [&](const TScale& s) { return forget_impl(s.body, counter); },
            [&](const TZero&) { return tvar("?" + std::to_string(++counter)); },
        },
        t->node());
}

}  // namespace

TypePtr forget(const TypePtr& t) {
    int counter = 0;
    return forget_impl(t, counter);
}

Context forget_context(const Context& ctx) {
    std::vector<std::pair<std::string, TypePtr>> out;
    int counter = 0;
    for (const auto& [name, ty] : ctx.bindings()) out.emplace_back(name, forget_impl(ty, counter));
    return Context(std::move(out));
}

namespace {

bool classical_match(const TypePtr& a, const TypePtr& b);

// System F synthesis with transparent scaling. nullopt marks a zero whose
// type is not yet determined (resolvable by a sum sibling or an application
// argument position). Placeholder variables produced by forgetting the zero
// type act as wildcards in comparisons: they stand for the free choice of
// type the zero axiom grants.
struct FChecker {
    int placeholder_counter = 1000;  // distinct from top-level forget() output

    TypePtr forget_here(const TypePtr& t) { return forget_impl(t, placeholder_counter); }

    std::optional<TypePtr> infer(const Context& ctx, const TermPtr& t) {
        return std::visit(
            overloaded{
                [&](const Var& v) -> std::optional<TypePtr> {
                    const TypePtr* u = ctx.lookup(v.name);
                    if (!u) throw TypeError(Errc::UnboundVariable, v.name);
                    return *u;
                },
                [&](const Abs& a) -> std::optional<TypePtr> {
                    if (!a.ann)
                        throw TypeError(Errc::MissingAnnotation,
                                        "binder " + a.binder + " in " + print_term(t));
                    TypePtr dom = forget_here(a.ann);
                    auto body = infer(ctx.extended(a.binder, dom), a.body);
                    if (!body)
                        throw TypeError(Errc::MissingZeroAnnotation,
                                        "body of " + print_term(t) + " is an unannotated 0");
                    return tarrow(dom, *body);
                },
                [&](const TyAbs& a) -> std::optional<TypePtr> {
                    if (ctx.free_type_vars().count(a.var))
                        throw TypeError(Errc::ForallEscape, a.var + " appears free in the context");
                    auto body = infer(ctx, a.body);
                    if (!body) return std::nullopt;  // 0 : forall X. A for any A
                    return tforall(a.var, *body);
                },
                [&](const TyApp& a) -> std::optional<TypePtr> {
                    auto fun = infer(ctx, a.fun);
                    if (!fun) return std::nullopt;
                    const auto* f = std::get_if<TForall>(&(*fun)->node());
                    if (!f)
                        throw TypeError(Errc::NotAForall, print_term(a.fun) + " : " + print_type(*fun));
                    return subst_type(f->body, f->var, forget_here(a.arg));
                },
                [&](const App& a) -> std::optional<TypePtr> {
                    auto fun = infer(ctx, a.fun);
                    if (!fun) {
                        auto arg = infer(ctx, a.arg);
                        (void)arg;  // the argument must still typecheck
                        return std::nullopt;
                    }
                    const auto* arrow = std::get_if<TArrow>(&(*fun)->node());
                    if (!arrow)
                        throw TypeError(Errc::NotAnArrow, print_term(a.fun) + " : " + print_type(*fun));
                    auto arg = infer(ctx, a.arg);
                    if (arg && !classical_match(arrow->dom, *arg))
                        throw TypeError(Errc::DomainMismatch,
                                        "expected " + print_type(arrow->dom) + ", got " +
                                            print_type(*arg) + " in " + print_term(t));
                    return arrow->cod;
                },
                [&](const Zero& z) -> std::optional<TypePtr> {
                    if (z.ann) return forget_here(z.ann);
                    return std::nullopt;
                },
                [&](const Scale& s) -> std::optional<TypePtr> { return infer(ctx, s.body); },
                [&](const Sum& s) -> std::optional<TypePtr> {
                    TypePtr ref;
                    for (const auto& addend : s.addends) {
                        auto p = infer(ctx, addend);
                        if (!p) continue;
                        if (!ref) {
                            ref = *p;
                        } else if (!classical_match(ref, *p)) {
                            throw TypeError(Errc::SumUnitMismatch, print_type(ref) + " vs " +
                                                                       print_type(*p) + " in " +
                                                                       print_term(t));
                        }
                    }
                    if (!ref) return std::nullopt;
                    return ref;
                },
            },
            t->node());
    }
};

// Alpha comparison where placeholder variables (standing for the forgotten
// zero type) match any subtree. Placeholders occur at most once each, so no
// binding consistency is tracked.
bool classical_match(const TypePtr& a, const TypePtr& b) {
    if (is_placeholder(a) || is_placeholder(b)) return true;
    int ra = static_cast<int>(a->node().index()), rb = static_cast<int>(b->node().index());
    if (ra != rb) return false;
    return std::visit(
        overloaded{
            [&](const TVar& va) { return va.name == std::get<TVar>(b->node()).name; },
            [&](const TArrow& aa) {
                const auto& ab = std::get<TArrow>(b->node());
                return classical_match(aa.dom, ab.dom) && classical_match(aa.cod, ab.cod);
            },
            [&](const TForall& fa) {
                const auto& fb = std::get<TForall>(b->node());
                if (fa.var == fb.var) return classical_match(fa.body, fb.body);
                // rename b's binder to a's
                auto renamed = subst_type(fb.body, fb.var, tvar(fa.var));
                return !free_type_vars(fb.body).count(fa.var) && classical_match(fa.body, renamed);
            },
            [&](const TScale&) { return false; },  // forgotten types carry no scalars
            [&](const TZero&) { return false; },
        },
        a->node());
}

}  // namespace

TypePtr infer_f(const Context& classical_ctx, const TermPtr& t) {
    FChecker fc;
    auto r = fc.infer(classical_ctx, t);
    if (!r)
        throw TypeError(Errc::MissingZeroAnnotation,
                        "the type of " + print_term(t) + " is undetermined (annotate 0 as (0 : A))");
    return *r;
}

bool check_correspondence(const Context& ctx, const TermPtr& t) {
    auto scalar_side = infer_scalar(ctx, t);  // precondition; failures propagate
    TypePtr f_side;
    try {
        f_side = infer_f(forget_context(ctx), t);
    } catch (const TypeError&) {
        return false;
    }
    if (scalar_side.type.zero) return true;  // Zero forgets to an arbitrary type
    return classical_match(forget(readback(scalar_side.type)), f_side);
}

int probe_scalar_linearity(const std::function<TermPtr(const Scalar&)>& tmpl, const Context& ctx,
                           const std::vector<Scalar>& samples) {
    if (samples.size() < 4) throw std::invalid_argument("at least four samples required");
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i] == samples[j]) throw std::invalid_argument("samples must be distinct");

    std::vector<Scalar> values;
    values.reserve(samples.size());
    for (const Scalar& s : samples) {
        TermPtr t = tmpl(s);
        try {
            auto inf = infer_scalar(ctx, t);
            values.push_back(inf.type.zero ? Scalar::zero() : inf.type.coeff);
        } catch (const TypeError& e) {
            throw TemplateIllTyped("at sample " + print_scalar(s) + ": " + e.what());
        }
    }

    // Newton divided differences: the interpolating polynomial has degree d
    // iff d is the highest order with a nonzero difference.
    std::vector<Scalar> dd = values;
    int degree = 0;
    size_t n = samples.size();
    for (size_t order = 1; order < n; ++order) {
        for (size_t i = 0; i + order < n; ++i) {
            Scalar denom = samples[i + order] - samples[i];
            dd[i] = (dd[i + 1] - dd[i]) * denom.reciprocal();
        }
        dd.resize(n - order);
        if (std::any_of(dd.begin(), dd.end(), [](const Scalar& s) { return !s.is_zero(); }))
            degree = static_cast<int>(order);
    }
    return degree;
}

}  // namespace lineal
