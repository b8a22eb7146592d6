#include "osd/density.h"
#include "osd/errors.h"

#include <algorithm>
#include <cmath>

namespace osd {

namespace {

enum class NodeKind { kCore, kPiece, kFull };

}  // namespace

ApproximationError approximation_error(const Approximant& un, const YoungFunction& psi,
                                       const Quadrature& quad, const ErrorOptions& options) {
  const PartitionOfUnity& pou = un.partition();
  const LayerDecomposition& layers = pou.layers();
  const WhitneyDecomposition& w = layers.whitney();
  const FunctionField& u = un.field();
  const int k = un.k();
  const std::vector<MultiIndex> alphas = multi_indices_of_order(k);

  ApproximationError result;
  std::vector<double> weights;
  std::vector<std::vector<double>> diffs(alphas.size());

  const auto visit = [&](const Box& box, NodeKind kind) {
    quad.for_each_node(box, [&](Point p, double wt) {
      const Jet uj = u.jet(p, k);
      const double gu = gradk_magnitude(uj, k);
      result.sup_gradk_u = std::max(result.sup_gradk_u, gu);
      if (kind == NodeKind::kCore) {
        result.sup_gradk_un = std::max(result.sup_gradk_un, gu);
        return;
      }
      weights.push_back(wt);
      if (kind == NodeKind::kPiece) {
        for (std::size_t a = 0; a < alphas.size(); ++a) diffs[a].push_back(-uj.derivative(alphas[a]));
        return;
      }
      ++result.full_evaluations;
      const Jet nj = un.jet(p, k);
      result.sup_gradk_un = std::max(result.sup_gradk_un, gradk_magnitude(nj, k));
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double d = nj.derivative(alphas[a]) - uj.derivative(alphas[a]);
        if (!std::isfinite(d)) throw NonFiniteError("non-finite approximation error at a node");
        diffs[a].push_back(d);
      }
    });
  };

  const double fine = 4.0 * pou.radius();
  const auto visit_square = [&](std::size_t s) {
    const DyadicSquare& q = w.square(s);
    const int g = layers.owner(s);
    const NodeKind pure = g == 0 ? NodeKind::kCore : NodeKind::kPiece;
    if (!pou.mixed(s)) {
      visit(q.box(), options.exact_everywhere ? NodeKind::kFull : pure);
      return;
    }
    int split = 1;
    while (q.side() / split > fine) split *= 2;
    const double h = q.side() / split;
    for (int j = 0; j < split; ++j) {
      for (int i = 0; i < split; ++i) {
        const Box b{q.x0() + i * h, q.y0() + j * h, q.x0() + (i + 1) * h, q.y0() + (j + 1) * h};
        const bool full = options.exact_everywhere || pou.mixed(b, g);
        visit(b, full ? NodeKind::kFull : pure);
      }
    }
  };

  if (options.subset) {
    for (std::size_t s : *options.subset) visit_square(s);
  } else {
    for (std::size_t s = 0; s < w.size(); ++s) visit_square(s);
  }

  for (std::size_t a = 0; a < alphas.size(); ++a) {
    result.modular_error += modular(diffs[a], weights, psi);
    result.luxemburg_error += luxemburg_norm(diffs[a], weights, psi);
  }
  return result;
}

}  // namespace osd
