#pragma once

#include "osd/approx.h"
#include "osd/fields.h"
#include "osd/layers.h"
#include "osd/orlicz.h"
#include "osd/polynomial.h"
#include "osd/quadrature.h"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace osd {

/// u_n = psi_0 u + sum_i psi_i P_i with P_i = project(u, Q_i, k) on the
/// anchor squares. Derivatives follow from jet products, i.e. the Leibniz
/// rule. The layer decomposition must outlive the approximant.
class Approximant {
 public:
  Approximant(FunctionField u, const LayerDecomposition& layers, int k,
              const Quadrature& quad = Quadrature{});

  int k() const { return k_; }
  int n() const { return pou_.layers().n(); }
  const FunctionField& field() const { return u_; }
  const PartitionOfUnity& partition() const { return pou_; }
  /// polys()[i - 1] belongs to piece i.
  const std::vector<Polynomial>& polys() const { return polys_; }

  Jet jet(Point p, int order) const;
  double value(Point p) const { return jet(p, 0).value(); }
  double derivative(MultiIndex a, Point p) const { return jet(p, a.order()).derivative(a); }

 private:
  FunctionField u_;
  int k_;
  PartitionOfUnity pou_;
  std::vector<Polynomial> polys_;
};

Approximant build_approximant(const FunctionField& u, const LayerDecomposition& layers, int k,
                              const Quadrature& quad = Quadrature{});

struct ErrorOptions {
  /// Evaluate u_n through the partition at every node, even where a single
  /// member is identically one.
  bool exact_everywhere = false;
  /// Restrict the integrals to these squares of the decomposition.
  std::optional<std::vector<std::size_t>> subset;
};

struct ApproximationError {
  double modular_error = 0.0;     // sum over |a| = k of int Psi(|d^a u_n - d^a u|)
  double luxemburg_error = 0.0;   // sum over |a| = k of the Luxemburg norms
  double sup_gradk_un = 0.0;      // max |grad^k u_n| over the nodes
  double sup_gradk_u = 0.0;       // max |grad^k u| over the same nodes
  std::size_t full_evaluations = 0;
};

/// Integrals over the Whitney cover. Squares where the partition is
/// transitional are split into sub-boxes of side <= 4r so the quadrature
/// resolves the mollifier.
ApproximationError approximation_error(const Approximant& un, const YoungFunction& psi,
                                       const Quadrature& quad = Quadrature{},
                                       const ErrorOptions& options = {});

/// c_M(u): c_M(t) = t on [-M, M], constant beyond 2M in absolute value,
/// C-infinity and nondecreasing with 0 <= c_M' <= 1.
FunctionField truncate(const FunctionField& u, double M);
/// Taylor data of c_M at t.
Taylor1 clamp_taylor(double t, double M, int order);

/// int Psi(|grad(truncate(u, M) - u)|) over the region.
double truncation_error(const FunctionField& u, double M, std::span<const DyadicSquare> region,
                        const YoungFunction& psi, const Quadrature& quad = Quadrature{});

struct StudyConfig {
  int lmax = 10;
  int quad_order = 8;
  LayerOptions layers;
};

struct ConvergenceRow {
  int n = 0;
  double modular_error = 0.0;
  double luxemburg_error = 0.0;
  double sup_gradk_un = 0.0;
  std::size_t num_squares = 0;
  std::size_t num_pieces = 0;
  std::size_t max_chain_len = 0;
  double sliver_area = 0.0;   // |domain| minus the area of the cover
  double sup_gradk_u = 0.0;
  bool ok = true;
  std::string failure;
};

/// One row per n in [n_first, n_last]. A failing n yields a row with ok =
/// false and NaN errors; later n still run. Throws PreconditionError when the
/// range leaves [2, lmax - 2].
std::vector<ConvergenceRow> convergence_study(const FunctionField& u, const PolygonDomain& domain,
                                              const YoungFunction& psi, int k, int n_first,
                                              int n_last, const StudyConfig& config = {});

/// Same study on a prebuilt decomposition.
std::vector<ConvergenceRow> convergence_study(const FunctionField& u,
                                              const WhitneyDecomposition& w,
                                              const YoungFunction& psi, int k, int n_first,
                                              int n_last, const StudyConfig& config = {});

}  // namespace osd
