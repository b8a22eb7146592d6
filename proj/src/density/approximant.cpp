#include "osd/density.h"
#include "osd/errors.h"

namespace osd {

Approximant::Approximant(FunctionField u, const LayerDecomposition& layers, int k,
                         const Quadrature& quad)
    : u_(std::move(u)), k_(k), pou_(layers, k) {
  if (k < 1 || k > u_.order()) throw PreconditionError("approximant order k exceeds the field order");
  const WhitneyDecomposition& w = layers.whitney();
  polys_.reserve(layers.num_pieces());
  for (const BoundaryPiece& piece : layers.pieces()) {
    const DyadicSquare& q = w.square(piece.anchor);
    polys_.push_back(project(u_, std::span(&q, 1), k, quad));
  }
}

Jet Approximant::jet(Point p, int order) const {
  thread_local std::vector<std::pair<int, Jet>> members;
  pou_.evaluate(p, order, members);
  Jet out(order);
  for (const auto& [g, psi] : members) {
    const Jet base = g == 0 ? u_.jet(p, order) : polys_[g - 1].jet(p, order);
    out += psi * base;
  }
  return out;
}

Approximant build_approximant(const FunctionField& u, const LayerDecomposition& layers, int k,
                              const Quadrature& quad) {
  return Approximant(u, layers, k, quad);
}

}  // namespace osd
