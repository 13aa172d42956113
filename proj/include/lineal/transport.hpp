#pragma once

#include "lineal/rewrite.hpp"

namespace lineal {

// Reduction lifted to Church-annotated terms, used to transport annotations
// along reduction when testing type preservation. The sixteen term rules
// are mirrored (factorisation matches addends by their erasures); on top of
// them, administrative rules resolve type abstraction/application so that
// every redex of the erased term has an annotated counterpart:
//
//   (/\X. u) [V]  ->  u[V/X]           TyBeta
//   (t + r) [V]   ->  t [V] + r [V]    TyAppSum
//   (a.t) [V]     ->  a.(t [V])        TyAppScale
//   0 [V]         ->  0                TyAppZero
//   /\X.(t + r)   ->  /\X.t + /\X.r    TyAbsSum
//   /\X.(a.t)     ->  a.(/\X.t)        TyAbsScale
//   /\X.0         ->  0                TyAbsZero
//
// Administrative steps erase to the identity and preserve the scalar type.
enum class AdminRule { TyBeta, TyAppSum, TyAppScale, TyAppZero, TyAbsSum, TyAbsScale, TyAbsZero };
const char* admin_rule_name(AdminRule r);

struct AnnRedex {
    Path pos;
    bool admin = false;
    RuleId rule = RuleId::E1;           // when !admin
    AdminRule admin_rule = AdminRule::TyBeta;  // when admin
};

// Fires administrative rules to fixpoint.
TermPtr admin_normalize(const TermPtr& t);

// All annotated redexes (administrative ones included), outermost-leftmost.
// Side conditions of the restricted mode are decided on the erasures.
std::vector<AnnRedex> annotated_redexes(const TermPtr& t, Mode mode);

TermPtr annotated_step(const TermPtr& t, const AnnRedex& r, Mode mode);

}  // namespace lineal
