#include "lineal/term.hpp"

#include <algorithm>
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

int variant_rank(const Term& t) { return static_cast<int>(t.node().index()); }

}  // namespace

TermPtr mk_var(std::string name) { return std::make_shared<Term>(Term::Node(Var{std::move(name)})); }

TermPtr mk_abs(std::string binder, TypePtr ann, TermPtr body) {
    return std::make_shared<Term>(Term::Node(Abs{std::move(binder), std::move(ann), std::move(body)}));
}

TermPtr mk_abs(std::string binder, TermPtr body) { return mk_abs(std::move(binder), nullptr, std::move(body)); }

TermPtr mk_tyabs(std::string var, TermPtr body) {
    return std::make_shared<Term>(Term::Node(TyAbs{std::move(var), std::move(body)}));
}

TermPtr mk_tyapp(TermPtr fun, TypePtr arg) {
    return std::make_shared<Term>(Term::Node(TyApp{std::move(fun), std::move(arg)}));
}

TermPtr mk_app(TermPtr fun, TermPtr arg) {
    return std::make_shared<Term>(Term::Node(App{std::move(fun), std::move(arg)}));
}

TermPtr mk_zero() { return mk_zero(nullptr); }

TermPtr mk_zero(TypePtr ann) { return std::make_shared<Term>(Term::Node(Zero{std::move(ann)})); }

TermPtr mk_scale(Scalar coeff, TermPtr body) {
    return std::make_shared<Term>(Term::Node(Scale{std::move(coeff), std::move(body)}));
}

TermPtr mk_sum(std::vector<TermPtr> addends) {
    std::vector<TermPtr> flat;
    flat.reserve(addends.size());
    for (auto& a : addends) {
        if (!a) throw std::invalid_argument("null sum addend");
        if (const auto* s = std::get_if<Sum>(&a->node())) {
            flat.insert(flat.end(), s->addends.begin(), s->addends.end());
        } else {
            flat.push_back(std::move(a));
        }
    }
    if (flat.empty()) throw std::invalid_argument("empty sum");
    if (flat.size() == 1) return flat.front();
    std::stable_sort(flat.begin(), flat.end(),
                     [](const TermPtr& a, const TermPtr& b) { return alpha_compare(a, b) < 0; });
    return std::make_shared<Term>(Term::Node(Sum{std::move(flat)}));
}

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> out;
    std::visit(overloaded{
                   [&](const Var& v) { out.insert(v.name); },
                   [&](const Abs& a) {
                       out = free_vars(a.body);
                       out.erase(a.binder);
                   },
                   [&](const TyAbs& a) { out = free_vars(a.body); },
                   [&](const TyApp& a) { out = free_vars(a.fun); },
                   [&](const App& a) {
                       out = free_vars(a.fun);
                       auto r = free_vars(a.arg);
                       out.insert(r.begin(), r.end());
                   },
                   [&](const Zero&) {},
                   [&](const Scale& s) { out = free_vars(s.body); },
                   [&](const Sum& s) {
                       for (const auto& a : s.addends) {
                           auto r = free_vars(a);
                           out.insert(r.begin(), r.end());
                       }
                   },
               },
               t->node());
    return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

bool is_base(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const Var&) { return true; },
                          [](const Abs&) { return true; },
                          [](const TyAbs& a) { return is_base(a.body); },
                          [](const TyApp& a) { return is_base(a.fun); },
                          [](const auto&) { return false; },
                      },
                      t->node());
}

TermPtr erase(const TermPtr& t) {
    return std::visit(overloaded{
                          [&](const Var&) { return t; },
                          [&](const Abs& a) { return mk_abs(a.binder, nullptr, erase(a.body)); },
                          [&](const TyAbs& a) { return erase(a.body); },
                          [&](const TyApp& a) { return erase(a.fun); },
                          [&](const App& a) { return mk_app(erase(a.fun), erase(a.arg)); },
                          [&](const Zero&) { return mk_zero(); },
                          [&](const Scale& s) { return mk_scale(s.coeff, erase(s.body)); },
                          [&](const Sum& s) {
                              std::vector<TermPtr> addends;
                              addends.reserve(s.addends.size());
                              for (const auto& a : s.addends) addends.push_back(erase(a));
                              return mk_sum(std::move(addends));
                          },
                      },
                      t->node());
}

bool is_erased(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const Var&) { return true; },
                          [](const Abs& a) { return !a.ann && is_erased(a.body); },
                          [](const TyAbs&) { return false; },
                          [](const TyApp&) { return false; },
                          [](const App& a) { return is_erased(a.fun) && is_erased(a.arg); },
                          [](const Zero& z) { return !z.ann; },
                          [](const Scale& s) { return is_erased(s.body); },
                          [](const Sum& s) {
                              for (const auto& a : s.addends)
                                  if (!is_erased(a)) return false;
                              return true;
                          },
                      },
                      t->node());
}

static std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int k = 1;; ++k) {
        std::string cand = base + std::to_string(k);
        if (!avoid.count(cand)) return cand;
    }
}

std::set<std::string> free_type_vars_of_term(const TermPtr& t) {
    std::set<std::string> out;
    std::visit(overloaded{
                   [&](const Var&) {},
                   [&](const Abs& a) {
                       if (a.ann) out = free_type_vars(a.ann);
                       auto b = free_type_vars_of_term(a.body);
                       out.insert(b.begin(), b.end());
                   },
                   [&](const TyAbs& a) {
                       out = free_type_vars_of_term(a.body);
                       out.erase(a.var);
                   },
                   [&](const TyApp& a) {
                       out = free_type_vars_of_term(a.fun);
                       auto b = free_type_vars(a.arg);
                       out.insert(b.begin(), b.end());
                   },
                   [&](const App& a) {
                       out = free_type_vars_of_term(a.fun);
                       auto b = free_type_vars_of_term(a.arg);
                       out.insert(b.begin(), b.end());
                   },
                   [&](const Zero& z) {
                       if (z.ann) out = free_type_vars(z.ann);
                   },
                   [&](const Scale& s) { out = free_type_vars_of_term(s.body); },
                   [&](const Sum& s) {
                       for (const auto& a : s.addends) {
                           auto b = free_type_vars_of_term(a);
                           out.insert(b.begin(), b.end());
                       }
                   },
               },
               t->node());
    return out;
}

TermPtr subst_type_in_term(const TermPtr& t, const std::string& x, const TypePtr& u) {
    return std::visit(
        overloaded{
            [&](const Var&) { return t; },
            [&](const Abs& a) {
                return mk_abs(a.binder, a.ann ? subst_type(a.ann, x, u) : nullptr, subst_type_in_term(a.body, x, u));
            },
            [&](const TyAbs& a) {
                if (a.var == x) return t;
                auto ufv = free_type_vars(u);
                if (ufv.count(a.var)) {
                    auto avoid = free_type_vars_of_term(a.body);
                    avoid.insert(ufv.begin(), ufv.end());
                    avoid.insert(x);
                    std::string y = fresh_name(a.var, avoid);
                    auto renamed = subst_type_in_term(a.body, a.var, tvar(y));
                    return mk_tyabs(y, subst_type_in_term(renamed, x, u));
                }
                return mk_tyabs(a.var, subst_type_in_term(a.body, x, u));
            },
            [&](const TyApp& a) { return mk_tyapp(subst_type_in_term(a.fun, x, u), subst_type(a.arg, x, u)); },
            [&](const App& a) { return mk_app(subst_type_in_term(a.fun, x, u), subst_type_in_term(a.arg, x, u)); },
            [&](const Zero& z) { return z.ann ? mk_zero(subst_type(z.ann, x, u)) : t; },
            [&](const Scale& s) { return mk_scale(s.coeff, subst_type_in_term(s.body, x, u)); },
            [&](const Sum& s) {
                std::vector<TermPtr> addends;
                addends.reserve(s.addends.size());
                for (const auto& a : s.addends) addends.push_back(subst_type_in_term(a, x, u));
                return mk_sum(std::move(addends));
            },
        },
        t->node());
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& b) {
    return std::visit(
        overloaded{
            [&](const Var& v) { return v.name == x ? b : t; },
            [&](const Abs& a) {
                if (a.binder == x) return t;
                auto bfv = free_vars(b);
                if (bfv.count(a.binder)) {
                    auto avoid = free_vars(a.body);
                    avoid.insert(bfv.begin(), bfv.end());
                    avoid.insert(x);
                    std::string y = fresh_name(a.binder, avoid);
                    auto renamed = substitute(a.body, a.binder, mk_var(y));
                    return mk_abs(y, a.ann, substitute(renamed, x, b));
                }
                return mk_abs(a.binder, a.ann, substitute(a.body, x, b));
            },
            [&](const TyAbs& a) {
                auto btv = free_type_vars_of_term(b);
                if (btv.count(a.var) && free_vars(a.body).count(x)) {
                    auto avoid = free_type_vars_of_term(a.body);
                    avoid.insert(btv.begin(), btv.end());
                    std::string y = fresh_name(a.var, avoid);
                    auto renamed = subst_type_in_term(a.body, a.var, tvar(y));
                    return mk_tyabs(y, substitute(renamed, x, b));
                }
                return mk_tyabs(a.var, substitute(a.body, x, b));
            },
            [&](const TyApp& a) { return mk_tyapp(substitute(a.fun, x, b), a.arg); },
            [&](const App& a) { return mk_app(substitute(a.fun, x, b), substitute(a.arg, x, b)); },
            [&](const Zero&) { return t; },
            [&](const Scale& s) { return mk_scale(s.coeff, substitute(s.body, x, b)); },
            [&](const Sum& s) {
                // Substitution distributes over the addends of a sum (and
                // through scaling, handled above).
                std::vector<TermPtr> addends;
                addends.reserve(s.addends.size());
                for (const auto& a : s.addends) addends.push_back(substitute(a, x, b));
                return mk_sum(std::move(addends));
            },
        },
        t->node());
}

namespace {

struct NameEnv {
    std::vector<std::string> binders;
    int find(const std::string& name) const {
        for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i)
            if (binders[static_cast<size_t>(i)] == name) return static_cast<int>(binders.size()) - 1 - i;
        return -1;
    }
};

// Type comparison inside terms threads the term-level type-binder
// environment (TyAbs binders), so the variable case is redone here.
int cmp_types_in_term(const TypePtr& a, const TypePtr& b, NameEnv& ta, NameEnv& tb) {
    int ra = static_cast<int>(a->node().index()), rb = static_cast<int>(b->node().index());
    if (ra != rb) return ra < rb ? -1 : 1;
    return std::visit(
        overloaded{
            [&](const TVar& xa) {
                const auto& xb = std::get<TVar>(b->node());
                int ia = ta.find(xa.name), ib = tb.find(xb.name);
                bool bda = ia >= 0, bdb = ib >= 0;
                if (bda != bdb) return bda ? -1 : 1;
                if (bda) return ia == ib ? 0 : (ia < ib ? -1 : 1);
                return xa.name.compare(xb.name) < 0 ? -1 : (xa.name == xb.name ? 0 : 1);
            },
            [&](const TArrow& aa) {
                const auto& ab = std::get<TArrow>(b->node());
                if (int c = cmp_types_in_term(aa.dom, ab.dom, ta, tb)) return c;
                return cmp_types_in_term(aa.cod, ab.cod, ta, tb);
            },
            [&](const TForall& fa) {
                const auto& fb = std::get<TForall>(b->node());
                ta.binders.push_back(fa.var);
                tb.binders.push_back(fb.var);
                int c = cmp_types_in_term(fa.body, fb.body, ta, tb);
                ta.binders.pop_back();
                tb.binders.pop_back();
                return c;
            },
            [&](const TScale& sa) {
                const auto& sb = std::get<TScale>(b->node());
                if (int c = compare(sa.coeff, sb.coeff)) return c;
                return cmp_types_in_term(sa.body, sb.body, ta, tb);
            },
            [&](const TZero&) { return 0; },
        },
        a->node());
}

int cmp_opt_types_env(const TypePtr& a, const TypePtr& b, NameEnv& ta, NameEnv& tb) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return cmp_types_in_term(a, b, ta, tb);
}

int cmp_terms(const TermPtr& a, const TermPtr& b, NameEnv& va, NameEnv& vb, NameEnv& ta, NameEnv& tb) {
    int ra = variant_rank(*a), rb = variant_rank(*b);
    if (ra != rb) return ra < rb ? -1 : 1;
    return std::visit(
        overloaded{
            [&](const Var& xa) {
                const auto& xb = std::get<Var>(b->node());
                int ia = va.find(xa.name), ib = vb.find(xb.name);
                bool bda = ia >= 0, bdb = ib >= 0;
                if (bda != bdb) return bda ? -1 : 1;
                if (bda) return ia == ib ? 0 : (ia < ib ? -1 : 1);
                return xa.name.compare(xb.name) < 0 ? -1 : (xa.name == xb.name ? 0 : 1);
            },
            [&](const Abs& aa) {
                const auto& ab = std::get<Abs>(b->node());
                if (int c = cmp_opt_types_env(aa.ann, ab.ann, ta, tb)) return c;
                va.binders.push_back(aa.binder);
                vb.binders.push_back(ab.binder);
                int c = cmp_terms(aa.body, ab.body, va, vb, ta, tb);
                va.binders.pop_back();
                vb.binders.pop_back();
                return c;
            },
            [&](const TyAbs& aa) {
                const auto& ab = std::get<TyAbs>(b->node());
                ta.binders.push_back(aa.var);
                tb.binders.push_back(ab.var);
                int c = cmp_terms(aa.body, ab.body, va, vb, ta, tb);
                ta.binders.pop_back();
                tb.binders.pop_back();
                return c;
            },
            [&](const TyApp& aa) {
                const auto& ab = std::get<TyApp>(b->node());
                if (int c = cmp_terms(aa.fun, ab.fun, va, vb, ta, tb)) return c;
                return cmp_types_in_term(aa.arg, ab.arg, ta, tb);
            },
            [&](const App& aa) {
                const auto& ab = std::get<App>(b->node());
                if (int c = cmp_terms(aa.fun, ab.fun, va, vb, ta, tb)) return c;
                return cmp_terms(aa.arg, ab.arg, va, vb, ta, tb);
            },
            [&](const Zero& za) {
                const auto& zb = std::get<Zero>(b->node());
                return cmp_opt_types_env(za.ann, zb.ann, ta, tb);
            },
            [&](const Scale& sa) {
                const auto& sb = std::get<Scale>(b->node());
                if (int c = compare(sa.coeff, sb.coeff)) return c;
                return cmp_terms(sa.body, sb.body, va, vb, ta, tb);
            },
            [&](const Sum& sa) {
                const auto& sb = std::get<Sum>(b->node());
                if (sa.addends.size() != sb.addends.size())
                    return sa.addends.size() < sb.addends.size() ? -1 : 1;
                for (size_t i = 0; i < sa.addends.size(); ++i)
                    if (int c = cmp_terms(sa.addends[i], sb.addends[i], va, vb, ta, tb)) return c;
                return 0;
            },
        },
        a->node());
}

}  // namespace

int alpha_compare(const TermPtr& a, const TermPtr& b) {
    NameEnv va, vb, ta, tb;
    return cmp_terms(a, b, va, vb, ta, tb);
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) { return alpha_compare(a, b) == 0; }

namespace {

void key_type(std::string& out, const TypePtr& t, NameEnv& ty) {
    std::visit(overloaded{
                   [&](const TVar& v) {
                       int i = ty.find(v.name);
                       if (i >= 0)
                           out += "b" + std::to_string(i);
                       else
                           out += "f" + v.name + ";";
                   },
                   [&](const TArrow& a) {
                       out += ">(";
                       key_type(out, a.dom, ty);
                       out += ",";
                       key_type(out, a.cod, ty);
                       out += ")";
                   },
                   [&](const TForall& f) {
                       out += "all.";
                       ty.binders.push_back(f.var);
                       key_type(out, f.body, ty);
                       ty.binders.pop_back();
                   },
                   [&](const TScale& s) {
                       out += "s" + print_scalar(s.coeff) + ".";
                       key_type(out, s.body, ty);
                   },
                   [&](const TZero&) { out += "0"; },
               },
               t->node());
}

void key_term(std::string& out, const TermPtr& t, NameEnv& tm, NameEnv& ty) {
    std::visit(overloaded{
                   [&](const Var& v) {
                       int i = tm.find(v.name);
                       if (i >= 0)
                           out += "v" + std::to_string(i);
                       else
                           out += "x" + v.name + ";";
                   },
                   [&](const Abs& a) {
                       out += "L";
                       if (a.ann) {
                           out += "[";
                           key_type(out, a.ann, ty);
                           out += "]";
                       }
                       out += ".";
                       tm.binders.push_back(a.binder);
                       key_term(out, a.body, tm, ty);
                       tm.binders.pop_back();
                   },
                   [&](const TyAbs& a) {
                       out += "G.";
                       ty.binders.push_back(a.var);
                       key_term(out, a.body, tm, ty);
                       ty.binders.pop_back();
                   },
                   [&](const TyApp& a) {
                       out += "I(";
                       key_term(out, a.fun, tm, ty);
                       out += ")[";
                       key_type(out, a.arg, ty);
                       out += "]";
                   },
                   [&](const App& a) {
                       out += "A(";
                       key_term(out, a.fun, tm, ty);
                       out += ",";
                       key_term(out, a.arg, tm, ty);
                       out += ")";
                   },
                   [&](const Zero& z) {
                       out += "Z";
                       if (z.ann) {
                           out += "[";
                           key_type(out, z.ann, ty);
                           out += "]";
                       }
                   },
                   [&](const Scale& s) {
                       out += "S" + print_scalar(s.coeff) + ".";
                       key_term(out, s.body, tm, ty);
                   },
                   [&](const Sum& s) {
                       out += "+{";
                       for (const auto& a : s.addends) {
                           key_term(out, a, tm, ty);
                           out += ";";
                       }
                       out += "}";
                   },
               },
               t->node());
}

}  // namespace

std::string canonical_key(const TermPtr& t) {
    std::string out;
    NameEnv tm, ty;
    key_term(out, t, tm, ty);
    return out;
}

size_t term_size(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const Var&) -> size_t { return 1; },
                          [](const Abs& a) { return 1 + term_size(a.body); },
                          [](const TyAbs& a) { return 1 + term_size(a.body); },
                          [](const TyApp& a) { return 1 + term_size(a.fun); },
                          [](const App& a) { return 1 + term_size(a.fun) + term_size(a.arg); },
                          [](const Zero&) -> size_t { return 1; },
                          [](const Scale& s) { return 1 + term_size(s.body); },
                          [](const Sum& s) {
                              size_t n = 1;
                              for (const auto& a : s.addends) n += term_size(a);
                              return n;
                          },
                      },
                      t->node());
}

int child_count(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const Var&) { return 0; },
                          [](const Abs&) { return 1; },
                          [](const TyAbs&) { return 1; },
                          [](const TyApp&) { return 1; },
                          [](const App&) { return 2; },
                          [](const Zero&) { return 0; },
                          [](const Scale&) { return 1; },
                          [](const Sum& s) { return static_cast<int>(s.addends.size()); },
                      },
                      t->node());
}

TermPtr child(const TermPtr& t, int i) {
    return std::visit(overloaded{
                          [&](const Abs& a) { return a.body; },
                          [&](const TyAbs& a) { return a.body; },
                          [&](const TyApp& a) { return a.fun; },
                          [&](const App& a) { return i == 0 ? a.fun : a.arg; },
                          [&](const Scale& s) { return s.body; },
                          [&](const Sum& s) { return s.addends.at(static_cast<size_t>(i)); },
                          [&](const auto&) -> TermPtr { throw std::logic_error("no such child"); },
                      },
                      t->node());
}

TermPtr with_child(const TermPtr& t, int i, TermPtr c) {
    return std::visit(overloaded{
                          [&](const Abs& a) { return mk_abs(a.binder, a.ann, std::move(c)); },
                          [&](const TyAbs& a) { return mk_tyabs(a.var, std::move(c)); },
                          [&](const TyApp& a) { return mk_tyapp(std::move(c), a.arg); },
                          [&](const App& a) {
                              return i == 0 ? mk_app(std::move(c), a.arg) : mk_app(a.fun, std::move(c));
                          },
                          [&](const Scale& s) { return mk_scale(s.coeff, std::move(c)); },
                          [&](const Sum& s) {
                              std::vector<TermPtr> addends = s.addends;
                              addends.at(static_cast<size_t>(i)) = std::move(c);
                              return mk_sum(std::move(addends));
                          },
                          [&](const auto&) -> TermPtr { throw std::logic_error("no such child"); },
                      },
                      t->node());
}

namespace {

// Precedence of the printing context, loosest to tightest. Lambdas are legal
// only at Term level (or inside parentheses); sums at Sum level and up.
enum class Prec { Term, Sum, Scaled, Application, Atom };

bool resugar(std::string& out, const TermPtr& t, const PrintNames* names) {
    if (!names) return false;
    for (const auto& [def, name] : names->terms) {
        if (alpha_equal(t, def) || (!is_erased(t) && alpha_equal(erase(t), def))) {
            out += name;
            return true;
        }
    }
    return false;
}

void print_tm(std::string& out, const TermPtr& t, Prec prec, const PrintNames* names);

void print_addend(std::string& out, const TermPtr& a, bool first, const PrintNames* names) {
    // Negative coefficients print through the subtraction sugar.
    if (const auto* s = std::get_if<Scale>(&a->node())) {
        std::string sugared;
        if (!resugar(sugared, a, names) && s->coeff < Scalar::zero()) {
            out += first ? "- " : " - ";
            Scalar mag = -s->coeff;
            if (mag.is_one()) {
                print_tm(out, s->body, Prec::Atom, names);
            } else {
                out += print_scalar(mag);
                out += '.';
                print_tm(out, s->body, Prec::Atom, names);
            }
            return;
        }
    }
    if (!first) out += " + ";
    print_tm(out, a, Prec::Scaled, names);
}

void print_tm(std::string& out, const TermPtr& t, Prec prec, const PrintNames* names) {
    if (resugar(out, t, names)) return;
    std::visit(
        overloaded{
            [&](const Var& v) { out += v.name; },
            [&](const Abs& a) {
                bool paren = prec > Prec::Term;
                if (paren) out += '(';
                out += '\\';
                out += a.binder;
                if (a.ann) {
                    out += ':';
                    out += print_type(a.ann, names ? &names->types : nullptr);
                }
                out += ". ";
                print_tm(out, a.body, Prec::Term, names);
                if (paren) out += ')';
            },
            [&](const TyAbs& a) {
                bool paren = prec > Prec::Term;
                if (paren) out += '(';
                out += "/\\";
                out += a.var;
                out += ". ";
                print_tm(out, a.body, Prec::Term, names);
                if (paren) out += ')';
            },
            [&](const TyApp& a) {
                bool paren = prec > Prec::Application;
                if (paren) out += '(';
                print_tm(out, a.fun, Prec::Application, names);
                out += " [";
                out += print_type(a.arg, names ? &names->types : nullptr);
                out += ']';
                if (paren) out += ')';
            },
            [&](const App& a) {
                bool paren = prec > Prec::Application;
                if (paren) out += '(';
                print_tm(out, a.fun, Prec::Application, names);
                out += ' ';
                print_tm(out, a.arg, Prec::Atom, names);
                if (paren) out += ')';
            },
            [&](const Zero& z) {
                if (z.ann) {
                    out += "(0 : ";
                    out += print_type(z.ann, names ? &names->types : nullptr);
                    out += ')';
                } else {
                    out += '0';
                }
            },
            [&](const Scale& s) {
                bool paren = prec > Prec::Scaled;
                if (paren) out += '(';
                out += print_scalar(s.coeff);
                out += '.';
                print_tm(out, s.body, Prec::Atom, names);
                if (paren) out += ')';
            },
            [&](const Sum& s) {
                bool paren = prec > Prec::Sum;
                if (paren) out += '(';
                for (size_t i = 0; i < s.addends.size(); ++i) print_addend(out, s.addends[i], i == 0, names);
                if (paren) out += ')';
            },
        },
        t->node());
}

}  // namespace

std::string print_term(const TermPtr& t, const PrintNames* names) {
    std::string out;
    print_tm(out, t, Prec::Term, names);
    return out;
}

}  // namespace lineal
