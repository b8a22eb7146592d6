#pragma once

#include "osd/fields.h"
#include "osd/geometry.h"
#include "osd/orlicz.h"
#include "osd/polynomial.h"
#include "osd/quadrature.h"

#include <span>

namespace osd {

/// The polynomial P of total degree <= k-1 with int_E d^a P = int_E d^a u for
/// every |a| <= k-1. Moments of E are exact; the u side uses quadrature.
/// Throws PreconditionError on an empty region or k outside [1, order+1].
Polynomial project(const FunctionField& u, std::span<const DyadicSquare> region, int k,
                   const Quadrature& quad = Quadrature{});

/// int_E Psi(|P|) / int_F Psi(|P|) with E, F inside Q. 0/0 gives 1 and x/0
/// gives +infinity.
double norm_equivalence_ratio(const Polynomial& p, std::span<const DyadicSquare> e,
                              std::span<const DyadicSquare> f, const DyadicSquare& q,
                              const YoungFunction& psi, const Quadrature& quad = Quadrature{});

/// avg_E Psi(|u - P_E| / l(Q1)^k) / avg_E Psi(|grad^k u|) over the union E of
/// the chain. 0/0 gives 0 and x/0 gives +infinity.
double poincare_ratio(const FunctionField& u, const Chain& chain, int k,
                      const YoungFunction& psi, const Quadrature& quad = Quadrature{});

/// int_Q1 Psi(|d^a P_Q1 - d^a P_Qm| / l(Q1)^(k-|a|)) / int_E Psi(|grad^k u|)
/// with P_Q = project(u, Q, k). Same conventions as poincare_ratio.
double chain_difference_ratio(const FunctionField& u, const Chain& chain, MultiIndex alpha,
                              int k, const YoungFunction& psi,
                              const Quadrature& quad = Quadrature{});

}  // namespace osd
