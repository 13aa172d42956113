#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lineal/term.hpp"
#include "lineal/type.hpp"

namespace lineal {

// Typing context: term variables bound to unit types, each name at most once
// (inner binders replace outer bindings of the same name).
class Context {
public:
    Context() = default;
    explicit Context(std::vector<std::pair<std::string, TypePtr>> bindings);

    const TypePtr* lookup(const std::string& name) const;
    Context extended(const std::string& name, TypePtr type) const;
    const std::vector<std::pair<std::string, TypePtr>>& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }

    std::set<std::string> free_type_vars() const;
    bool classical() const;
    std::string to_string(const TypeAliases* aliases = nullptr) const;

private:
    std::vector<std::pair<std::string, TypePtr>> bindings_;
};

enum class Errc {
    UnboundVariable,
    NotAnArrow,
    NotAForall,
    DomainMismatch,
    SumUnitMismatch,
    ForallEscape,
    MissingAnnotation,
    NonUnitAnnotation,
    MissingZeroAnnotation,
    NonClassicalContext,
    NonClassicalTypeApplication,
    AscriptionMismatch,
};

const char* errc_name(Errc c);

struct TypeError : std::runtime_error {
    TypeError(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code(code) {}
    Errc code;
};

// Rule labels of the typing rules; equiv nodes are emitted whenever
// canonicalization rewrites the type a structural rule produced.
enum class RuleLabel { Ax, Equiv, ArrowE, ArrowI, ForallE, ForallI, AxZero, SumI, ScaleI };
const char* rule_label_name(RuleLabel r);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    RuleLabel rule;
    Context ctx;
    TermPtr term;
    TypePtr type;  // as concluded by this node (canonical at equiv nodes)
    std::vector<DerivPtr> premises;

    // Tree depth with equiv nodes contributing nothing.
    int size() const;
};

bool derivation_equal(const DerivPtr& a, const DerivPtr& b);
std::string print_derivation(const DerivPtr& d, const TypeAliases* aliases = nullptr);
// Machine-readable export: {"rule", "context", "term", "type", "children"}.
std::string derivation_export(const DerivPtr& d);

struct Inferred {
    CanonicalType type;
    DerivPtr deriv;
};

// Syntax-directed checking for the scalar system over Church-annotated
// terms: every binder annotated, type abstraction/application explicit.
Inferred infer_scalar(const Context& ctx, const TermPtr& t);

struct BaryResult {
    bool ok;  // final type is classical with coefficient one
    CanonicalType type;
    DerivPtr deriv;
};

// The barycentric variant: context entries and binder annotations must be
// classical, type application takes classical arguments only. Scalars may
// appear at intermediate stages; acceptance looks at the final type alone.
BaryResult check_barycentric(const Context& ctx, const TermPtr& t);

// Scalar-forgetting map on types; the zero type maps to a fresh placeholder
// variable ("?n"), unconstrained by construction.
TypePtr forget(const TypePtr& t);
Context forget_context(const Context& ctx);

// System F extended with scalar-transparent rules: 0 at any annotated type,
// sums of equal types, transparent scaling. Zero nodes need an annotation
// unless an enclosing sum or application argument position determines them.
TypePtr infer_f(const Context& classical_ctx, const TermPtr& t);

// Whether the scalar judgement survives forgetting: infer_scalar must
// succeed beforehand (its failure propagates); returns false when the
// System F side rejects or disagrees with the forgotten type.
bool check_correspondence(const Context& ctx, const TermPtr& t);

struct TemplateIllTyped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instantiates a one-scalar-hole template at each sample, reads off the
// outer canonical scalar and returns the degree of the interpolating
// polynomial (exact, via divided differences). At least four distinct
// samples required.
int probe_scalar_linearity(const std::function<TermPtr(const Scalar&)>& tmpl, const Context& ctx,
                           const std::vector<Scalar>& samples);

}  // namespace lineal
