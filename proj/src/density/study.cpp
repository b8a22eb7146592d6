#include "osd/density.h"
#include "osd/errors.h"

#include <cmath>
#include <limits>

namespace osd {

std::vector<ConvergenceRow> convergence_study(const FunctionField& u,
                                              const WhitneyDecomposition& w,
                                              const YoungFunction& psi, int k, int n_first,
                                              int n_last, const StudyConfig& config) {
  if (n_first > n_last) throw PreconditionError("empty n range");
  if (n_first < 2 || n_last > w.max_level() - 2) {
    throw PreconditionError("n range must lie in [2, lmax - 2]");
  }
  if (k < 1 || k > u.order()) throw PreconditionError("k must lie in [1, field order]");
  const Quadrature quad(config.quad_order);
  const double sliver = w.domain().area() - w.covered_area();

  std::vector<ConvergenceRow> rows;
  for (int n = n_first; n <= n_last; ++n) {
    ConvergenceRow row;
    row.n = n;
    row.num_squares = w.size();
    row.sliver_area = sliver;
    try {
      const LayerDecomposition layers = build_layers(w, n, config.layers);
      row.num_pieces = layers.num_pieces();
      row.max_chain_len = layers.max_chain_length();
      const Approximant un(u, layers, k, quad);
      const ApproximationError err = approximation_error(un, psi, quad);
      row.modular_error = err.modular_error;
      row.luxemburg_error = err.luxemburg_error;
      row.sup_gradk_un = err.sup_gradk_un;
      row.sup_gradk_u = err.sup_gradk_u;
    } catch (const Error& e) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      row.ok = false;
      row.failure = e.what();
      row.modular_error = row.luxemburg_error = row.sup_gradk_un = row.sup_gradk_u = nan;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_study(const FunctionField& u, const PolygonDomain& domain,
                                              const YoungFunction& psi, int k, int n_first,
                                              int n_last, const StudyConfig& config) {
  if (n_first < 2 || n_last > config.lmax - 2 || n_first > n_last) {
    throw PreconditionError("n range must lie in [2, lmax - 2]");
  }
  const auto [normalized, scale] = normalize(domain);
  (void)scale;
  const WhitneyDecomposition w = whitney_decompose(normalized, {config.lmax});
  return convergence_study(u, w, psi, k, n_first, n_last, config);
}

}  // namespace osd
