#pragma once

#include "lgf/holonomic.hpp"

namespace lgf {

// Recurrence for the Taylor coefficients of any power-series solution,
// valid for all n >= 0, content-normalized. Common polynomial factors of the
// coefficients are kept.
LinearRecurrence ode_to_recurrence(const LinearODE& ode);

// Index offset of ode_to_recurrence: its equation at n is the coefficient of
// z^(n - offset) of ode(P).
int recurrence_offset(const LinearODE& ode);

// Annihilator of P/(1-z) given one of P: ode composed with multiplication by (1-z).
LinearODE quotient_closure(const LinearODE& ode);

// Indicial polynomial at z = 0 in the variable lambda, normalized.
IntPoly indicial_polynomial(const LinearODE& ode);

// Divides every coefficient by their common polynomial gcd. The result can
// lose validity at integer roots of the removed factor.
LinearRecurrence primitive_part(const LinearRecurrence& rec);

}  // namespace lgf
