#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lineal/term.hpp"

namespace lineal {

// The sixteen reduction rules, in the strategy's tie-breaking order.
enum class RuleId {
    E1,  // t + 0 -> t
    E2,  // 0.t -> 0
    E3,  // 1.t -> t
    E4,  // a.0 -> 0
    E5,  // a.(b.t) -> (a*b).t
    E6,  // a.(t+r) -> a.t + a.r
    F1,  // a.t + b.t -> (a+b).t          (*)
    F2,  // a.t + t -> (a+1).t            (*)
    F3,  // t + t -> (1+1).t              (*)
    A1,  // (t+r) u -> (t) u + (r) u      (**)
    A2,  // (u) (t+r) -> (u) t + (u) r    (**)
    A3,  // (a.t) r -> a.(t) r            (*)
    A4,  // (r) (a.t) -> a.(r) t          (*)
    A5,  // (0) t -> 0
    A6,  // (t) 0 -> 0
    B,   // (\x t) b -> t[b/x]            (***)
};

const char* rule_name(RuleId r);

// Restricted enforces the closed-normal side conditions (*) and (**);
// Unrestricted drops them. The base-term restriction (***) on beta always
// applies.
enum class Mode { Restricted, Unrestricted };

// Dot-separated child indices from the root; "-" denotes the root itself.
using Path = std::vector<int>;
std::string path_to_string(const Path& p);

struct Redex {
    Path pos;
    RuleId rule;
};

// Every (position, rule) pair that fires under the mode's side conditions,
// in deterministic order: outermost-leftmost position, then rule order.
std::vector<Redex> applicable_redexes(const TermPtr& t, Mode mode);
std::optional<Redex> first_redex(const TermPtr& t, Mode mode);
bool is_normal(const TermPtr& t, Mode mode);

// Applies one rule at one position; the redex must be applicable under the
// given mode or std::logic_error is thrown.
TermPtr step(const TermPtr& t, const Path& pos, RuleId rule, Mode mode);

struct TraceStep {
    Path pos;
    RuleId rule;
    TermPtr result;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;  // empty when not recorded
    long fuel_used = 0;
    bool fuel_exhausted = false;
};

struct NormalizeResult {
    TermPtr term;
    ReductionTrace trace;
};

// Fires the first redex repeatedly until none applies or fuel runs out.
NormalizeResult normalize(const TermPtr& t, Mode mode, long fuel = 100000, bool record_trace = false);

std::string print_trace(const ReductionTrace& trace, const PrintNames* names = nullptr);

// The coefficient-sum function: 0 on the null vector, 1 on base terms,
// additive over sums, multiplicative over scaling and application.
Scalar weight(const TermPtr& t);

struct NotInCanonicalVectorForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed normal term is a weighted sum of abstractions; returns its
// (coefficient, abstraction) pairs, [] for 0, coefficient 1 for bare
// abstractions. Throws NotInCanonicalVectorForm if the shape fails, which
// signals a rewrite-engine bug rather than a user error.
std::vector<std::pair<Scalar, TermPtr>> decompose_normal(const TermPtr& t);

TermPtr subterm_at(const TermPtr& t, const Path& pos);

}  // namespace lineal
