#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lineal/scalar.hpp"
#include "lineal/type.hpp"

namespace lineal {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Surface terms are Church-style: binders may carry unit-type annotations
// and type abstraction/application appear as explicit nodes. erase() maps
// them onto the plain Curry-style calculus the reduction rules act on.
struct Var {
    std::string name;
};
struct Abs {
    std::string binder;
    TypePtr ann;  // null on erased terms
    TermPtr body;
};
struct TyAbs {
    std::string var;
    TermPtr body;
};
struct TyApp {
    TermPtr fun;
    TypePtr arg;  // unit type
};
struct App {
    TermPtr fun;
    TermPtr arg;
};
struct Zero {
    TypePtr ann;  // optional classical ascription, used only by the System F checker
};
struct Scale {
    Scalar coeff;
    TermPtr body;
};
// Sums are flattened multisets (never a Sum directly inside a Sum) with at
// least two addends, held in a deterministic total order. This is what
// makes +'s associativity/commutativity structural.
struct Sum {
    std::vector<TermPtr> addends;
};

class Term {
public:
    using Node = std::variant<Var, Abs, TyAbs, TyApp, App, Zero, Scale, Sum>;
    explicit Term(Node n) : node_(std::move(n)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

TermPtr mk_var(std::string name);
TermPtr mk_abs(std::string binder, TypePtr ann, TermPtr body);
TermPtr mk_abs(std::string binder, TermPtr body);  // unannotated
TermPtr mk_tyabs(std::string var, TermPtr body);
TermPtr mk_tyapp(TermPtr fun, TypePtr arg);
TermPtr mk_app(TermPtr fun, TermPtr arg);
TermPtr mk_zero();
TermPtr mk_zero(TypePtr ann);
TermPtr mk_scale(Scalar coeff, TermPtr body);
// Flattens nested sums and sorts the resulting multiset; a single addend
// collapses to that addend.
TermPtr mk_sum(std::vector<TermPtr> addends);

std::set<std::string> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);
// True iff the erasure of t is a variable or an abstraction (the only terms
// substitutable in a beta step).
bool is_base(const TermPtr& t);

// Drops binder annotations and all type abstraction/application nodes.
TermPtr erase(const TermPtr& t);
bool is_erased(const TermPtr& t);

// Capture-avoiding substitution of b for free occurrences of x.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& b);

// Capture-avoiding substitution of a unit type for a type variable across
// every annotation of a term.
TermPtr subst_type_in_term(const TermPtr& t, const std::string& x, const TypePtr& u);

std::set<std::string> free_type_vars_of_term(const TermPtr& t);

// Uniform child access (Abs/TyAbs/Scale: body; TyApp: fun; App: fun, arg;
// Sum: addends). Rebuilding a sum child re-sorts the multiset.
int child_count(const TermPtr& t);
TermPtr child(const TermPtr& t, int i);
TermPtr with_child(const TermPtr& t, int i, TermPtr c);

// Total order up to alpha-renaming (of term and type binders alike);
// 0 iff alpha-equal. Fixes the iteration order of sum multisets.
int alpha_compare(const TermPtr& a, const TermPtr& b);
bool alpha_equal(const TermPtr& a, const TermPtr& b);

// Structural serialization with de Bruijn-indexed binders; equal strings
// iff alpha-equal terms. Handy as a set/map key.
std::string canonical_key(const TermPtr& t);

// Node count of the term skeleton (annotations not counted).
size_t term_size(const TermPtr& t);

// Display names: subterms alpha-equal to an entry's (erased) term print as
// the entry's name; types resugar through the alias table.
struct PrintNames {
    std::vector<std::pair<TermPtr, std::string>> terms;
    TypeAliases types;
};

std::string print_term(const TermPtr& t, const PrintNames* names = nullptr);

}  // namespace lineal
