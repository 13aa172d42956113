#include "lineal/type.hpp"

#include <cassert>
#include <stdexcept>

namespace lineal {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

int variant_rank(const Type& t) { return static_cast<int>(t.node().index()); }

}  // namespace

TypePtr tvar(std::string name) { return std::make_shared<Type>(Type::Node(TVar{std::move(name)})); }

TypePtr tarrow(TypePtr dom, TypePtr cod) {
    if (!is_unit(dom)) throw std::invalid_argument("arrow domain must be a unit type");
    return std::make_shared<Type>(Type::Node(TArrow{std::move(dom), std::move(cod)}));
}

TypePtr tforall(std::string var, TypePtr body) {
    return std::make_shared<Type>(Type::Node(TForall{std::move(var), std::move(body)}));
}

TypePtr tscale(Scalar coeff, TypePtr body) {
    return std::make_shared<Type>(Type::Node(TScale{std::move(coeff), std::move(body)}));
}

TypePtr tzero() {
    static const TypePtr z = std::make_shared<Type>(Type::Node(TZero{}));
    return z;
}

bool is_unit(const TypePtr& t) {
    return std::visit(overloaded{
                          [](const TVar&) { return true; },
                          [](const TArrow&) { return true; },  // domain unit by construction
                          [](const TForall& f) { return is_unit(f.body); },
                          [](const TScale&) { return false; },
                          [](const TZero&) { return false; },
                      },
                      t->node());
}

bool is_classical(const TypePtr& t) {
    return std::visit(overloaded{
                          [](const TVar&) { return true; },
                          [](const TArrow& a) { return is_classical(a.dom) && is_classical(a.cod); },
                          [](const TForall& f) { return is_classical(f.body); },
                          [](const TScale&) { return false; },
                          [](const TZero&) { return false; },
                      },
                      t->node());
}

std::set<std::string> free_type_vars(const TypePtr& t) {
    std::set<std::string> out;
    std::visit(overloaded{
                   [&](const TVar& v) { out.insert(v.name); },
                   [&](const TArrow& a) {
                       auto d = free_type_vars(a.dom);
                       auto c = free_type_vars(a.cod);
                       out.insert(d.begin(), d.end());
                       out.insert(c.begin(), c.end());
                   },
                   [&](const TForall& f) {
                       out = free_type_vars(f.body);
                       out.erase(f.var);
                   },
                   [&](const TScale& s) { out = free_type_vars(s.body); },
                   [&](const TZero&) {},
               },
               t->node());
    return out;
}

namespace {

std::string fresh_type_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int k = 1;; ++k) {
        std::string cand = base + std::to_string(k);
        if (!avoid.count(cand)) return cand;
    }
}

TypePtr subst_type_any(const TypePtr& t, const std::string& x, const TypePtr& u) {
    return std::visit(
        overloaded{
            [&](const TVar& v) { return v.name == x ? u : t; },
            [&](const TArrow& a) { return tarrow(subst_type_any(a.dom, x, u), subst_type_any(a.cod, x, u)); },
            [&](const TForall& f) {
                if (f.var == x) return t;
                auto ufv = free_type_vars(u);
                if (ufv.count(f.var)) {
                    auto avoid = free_type_vars(f.body);
                    avoid.insert(ufv.begin(), ufv.end());
                    avoid.insert(x);
                    std::string y = fresh_type_name(f.var, avoid);
                    auto renamed = subst_type_any(f.body, f.var, tvar(y));
                    return tforall(y, subst_type_any(renamed, x, u));
                }
                return tforall(f.var, subst_type_any(f.body, x, u));
            },
            [&](const TScale& s) { return tscale(s.coeff, subst_type_any(s.body, x, u)); },
            [&](const TZero&) { return t; },
        },
        t->node());
}

}  // namespace

TypePtr subst_type(const TypePtr& t, const std::string& x, const TypePtr& u) {
    if (!is_unit(u)) throw std::invalid_argument("type variables can only be substituted by unit types");
    return subst_type_any(t, x, u);
}

namespace {

// Bound type variables are compared by binder index, free ones by name.
struct TyEnv {
    std::vector<std::string> binders;
    int find(const std::string& name) const {
        for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i)
            if (binders[static_cast<size_t>(i)] == name) return static_cast<int>(binders.size()) - 1 - i;
        return -1;
    }
};

int cmp_types(const TypePtr& a, const TypePtr& b, TyEnv& ea, TyEnv& eb) {
    int ra = variant_rank(*a), rb = variant_rank(*b);
    if (ra != rb) return ra < rb ? -1 : 1;
    return std::visit(
        overloaded{
            [&](const TVar& va) {
                const auto& vb = std::get<TVar>(b->node());
                int ia = ea.find(va.name), ib = eb.find(vb.name);
                bool ba = ia >= 0, bb = ib >= 0;
                if (ba != bb) return ba ? -1 : 1;
                if (ba) return ia == ib ? 0 : (ia < ib ? -1 : 1);
                return va.name.compare(vb.name) < 0 ? -1 : (va.name == vb.name ? 0 : 1);
            },
            [&](const TArrow& aa) {
                const auto& ab = std::get<TArrow>(b->node());
                if (int c = cmp_types(aa.dom, ab.dom, ea, eb)) return c;
                return cmp_types(aa.cod, ab.cod, ea, eb);
            },
            [&](const TForall& fa) {
                const auto& fb = std::get<TForall>(b->node());
                ea.binders.push_back(fa.var);
                eb.binders.push_back(fb.var);
                int c = cmp_types(fa.body, fb.body, ea, eb);
                ea.binders.pop_back();
                eb.binders.pop_back();
                return c;
            },
            [&](const TScale& sa) {
                const auto& sb = std::get<TScale>(b->node());
                if (int c = compare(sa.coeff, sb.coeff)) return c;
                return cmp_types(sa.body, sb.body, ea, eb);
            },
            [&](const TZero&) { return 0; },
        },
        a->node());
}

}  // namespace

int alpha_compare_types(const TypePtr& a, const TypePtr& b) {
    TyEnv ea, eb;
    return cmp_types(a, b, ea, eb);
}

bool alpha_equal_types(const TypePtr& a, const TypePtr& b) { return alpha_compare_types(a, b) == 0; }

namespace {

TypePtr canon_unit(const TypePtr& u);

}

CanonicalType canonicalize(const TypePtr& t) {
    return std::visit(
        overloaded{
            [&](const TVar&) { return CanonicalType::make(Scalar::one(), t); },
            [&](const TArrow& a) {
                return CanonicalType::make(Scalar::one(), tarrow(canon_unit(a.dom), readback(canonicalize(a.cod))));
            },
            [&](const TForall& f) {
                CanonicalType body = canonicalize(f.body);
                if (body.zero) return CanonicalType::make_zero();  // forall X. Zero == Zero
                return CanonicalType::make(body.coeff, tforall(f.var, body.unit));
            },
            [&](const TScale& s) {
                if (s.coeff.is_zero()) return CanonicalType::make_zero();
                CanonicalType body = canonicalize(s.body);
                if (body.zero) return CanonicalType::make_zero();
                return CanonicalType::make(s.coeff * body.coeff, body.unit);
            },
            [&](const TZero&) { return CanonicalType::make_zero(); },
        },
        t->node());
}

namespace {

TypePtr canon_unit(const TypePtr& u) {
    return std::visit(overloaded{
                          [&](const TVar&) { return u; },
                          [&](const TArrow& a) {
                              return tarrow(canon_unit(a.dom), readback(canonicalize(a.cod)));
                          },
                          [&](const TForall& f) { return tforall(f.var, canon_unit(f.body)); },
                          [&](const TScale&) -> TypePtr { throw std::logic_error("canon_unit on non-unit type"); },
                          [&](const TZero&) -> TypePtr { throw std::logic_error("canon_unit on non-unit type"); },
                      },
                      u->node());
}

}  // namespace

TypePtr readback(const CanonicalType& c) {
    if (c.zero) return tzero();
    if (c.coeff.is_one()) return c.unit;
    return tscale(c.coeff, c.unit);
}

bool canonical_equal(const CanonicalType& a, const CanonicalType& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.coeff == b.coeff && alpha_equal_types(a.unit, b.unit);
}

bool type_equiv(const TypePtr& a, const TypePtr& b) { return canonical_equal(canonicalize(a), canonicalize(b)); }

namespace {

// Precedence levels: forall binds loosest, then arrow, then scaling; atoms
// are variables, Zero and parenthesized types.
enum class TyPrec { Top, Arrow, Scale, Atom };

void print_ty(std::string& out, const TypePtr& t, TyPrec prec, const TypeAliases* aliases);

bool print_alias(std::string& out, const TypePtr& t, const TypeAliases* aliases) {
    if (!aliases) return false;
    for (const auto& [ty, name] : aliases->entries) {
        if (alpha_equal_types(t, ty)) {
            out += name;
            return true;
        }
    }
    return false;
}

void print_ty(std::string& out, const TypePtr& t, TyPrec prec, const TypeAliases* aliases) {
    if (print_alias(out, t, aliases)) return;
    std::visit(overloaded{
                   [&](const TVar& v) { out += v.name; },
                   [&](const TArrow& a) {
                       bool paren = prec > TyPrec::Arrow;
                       if (paren) out += '(';
                       print_ty(out, a.dom, TyPrec::Scale, aliases);
                       out += " -> ";
                       print_ty(out, a.cod, TyPrec::Arrow, aliases);  // right-associative
                       if (paren) out += ')';
                   },
                   [&](const TForall& f) {
                       bool paren = prec > TyPrec::Top;
                       if (paren) out += '(';
                       out += "forall ";
                       out += f.var;
                       out += ". ";
                       print_ty(out, f.body, TyPrec::Top, aliases);
                       if (paren) out += ')';
                   },
                   [&](const TScale& s) {
                       bool paren = prec > TyPrec::Scale;
                       if (paren) out += '(';
                       out += print_scalar(s.coeff);
                       out += '.';
                       print_ty(out, s.body, TyPrec::Atom, aliases);
                       if (paren) out += ')';
                   },
                   [&](const TZero&) { out += "Zero"; },
               },
               t->node());
}

}  // namespace

std::string print_type(const TypePtr& t, const TypeAliases* aliases) {
    std::string out;
    print_ty(out, t, TyPrec::Top, aliases);
    return out;
}

}  // namespace lineal
