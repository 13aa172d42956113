#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lineal/scalar.hpp"

namespace lineal {

class Type;
using TypePtr = std::shared_ptr<const Type>;

// Type grammar:
//   T, R, S ::= U | forall X. T | a.T | Zero      (general types)
//   U, V, W ::= X | U -> T | forall X. U          (unit types)
// Arrow domains are unit types by construction; scalars occur only to the
// right of an arrow or at the head of a general type.
struct TVar {
    std::string name;
};
struct TArrow {
    TypePtr dom;  // always a unit type
    TypePtr cod;
};
struct TForall {
    std::string var;
    TypePtr body;
};
struct TScale {
    Scalar coeff;
    TypePtr body;
};
struct TZero {};

class Type {
public:
    using Node = std::variant<TVar, TArrow, TForall, TScale, TZero>;
    explicit Type(Node n) : node_(std::move(n)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

TypePtr tvar(std::string name);
TypePtr tarrow(TypePtr dom, TypePtr cod);  // requires is_unit(dom)
TypePtr tforall(std::string var, TypePtr body);
TypePtr tscale(Scalar coeff, TypePtr body);
TypePtr tzero();

bool is_unit(const TypePtr& t);
// Scalar-free and zero-free everywhere: the classical types of lambda2^la
// and of the barycentric system.
bool is_classical(const TypePtr& t);

std::set<std::string> free_type_vars(const TypePtr& t);

// Capture-avoiding substitution of a unit type for a type variable.
TypePtr subst_type(const TypePtr& t, const std::string& x, const TypePtr& u);

// Total order on types up to alpha-renaming of bound variables; 0 iff
// alpha-equal.
int alpha_compare_types(const TypePtr& a, const TypePtr& b);
bool alpha_equal_types(const TypePtr& a, const TypePtr& b);

// Every type is equivalent to either the zero type or a nonzero scalar times
// a unit type. The unit component is itself in canonical form: nested
// scalars collected, units of coefficient one elided, scalars floated out of
// foralls but never across an arrow.
struct CanonicalType {
    bool zero = true;
    Scalar coeff;        // nonzero when !zero
    TypePtr unit;        // canonical unit type when !zero

    static CanonicalType make_zero() { return CanonicalType{}; }
    static CanonicalType make(Scalar c, TypePtr u) { return CanonicalType{false, std::move(c), std::move(u)}; }
};

CanonicalType canonicalize(const TypePtr& t);
TypePtr readback(const CanonicalType& c);  // Zero | U | a.U

bool canonical_equal(const CanonicalType& a, const CanonicalType& b);
bool type_equiv(const TypePtr& a, const TypePtr& b);

// Optional display aliases: subtrees alpha-equal to a listed type are
// printed under the given name.
struct TypeAliases {
    std::vector<std::pair<TypePtr, std::string>> entries;
};

std::string print_type(const TypePtr& t, const TypeAliases* aliases = nullptr);

}  // namespace lineal
