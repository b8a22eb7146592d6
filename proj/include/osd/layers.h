#pragma once

#include "osd/geometry.h"
#include "osd/jet.h"

#include <cstddef>
#include <utility>
#include <vector>

namespace osd {

/// Squares of side >= 2^-n forming the edge-connected component of the root.
struct CoreRegion {
  int n = 0;
  std::vector<std::size_t> squares;  // ascending indices into the decomposition
  std::vector<char> member;          // member[i] != 0 iff square i is in the core
  double area = 0.0;

  bool contains(std::size_t i) const { return member[i] != 0; }
};

/// Throws PreconditionError when the root is smaller than 2^-n.
CoreRegion core_region(const WhitneyDecomposition& w, int n);

/// Closed rectilinear loop on the level-n grid, counterclockwise with the core
/// on the left. Vertices are in units of 2^-n.
struct Outline {
  std::vector<std::pair<std::int64_t, std::int64_t>> vertices;
  double unit = 0.0;

  std::size_t num_edges() const { return vertices.size(); }
  Point point(std::size_t i) const;
  /// Midpoint of edge i.
  Point midpoint(std::size_t i) const;
};

/// Outer boundary of the core. Where two core cells meet only at a corner the
/// trace turns right, so the loop never crosses itself.
Outline trace_outline(const WhitneyDecomposition& w, const CoreRegion& core);

struct BoundaryPiece {
  int i = 0;                       // cyclic position, 1-based
  std::vector<std::size_t> tilde;  // squares of the piece, ascending
  Box tilde_bbox;
  Point centroid;                  // area centroid of the piece
  std::size_t anchor = 0;          // core square of side 2^-n
};

struct LayerOptions {
  std::size_t max_chain = 20;
  /// Target arc length along the core outline in units of 2^-n, in [4, 8].
  double arc_length = 4.0;
};

struct AnchorChain {
  int i = 0;
  int j = 0;
  std::vector<std::size_t> squares;
};

/// D_n, cyclically ordered boundary pieces with their delta-neighbourhoods
/// (delta = 2^-n-3) and chains between the anchors of neighbouring pieces.
/// Keeps a pointer to the decomposition, which must outlive it.
class LayerDecomposition {
 public:
  const WhitneyDecomposition& whitney() const { return *w_; }
  int n() const { return core_.n; }
  double delta() const { return delta_; }
  const CoreRegion& core() const { return core_; }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  std::size_t num_pieces() const { return pieces_.size(); }
  const std::vector<AnchorChain>& chains() const { return chains_; }
  std::size_t max_chain_length() const { return max_chain_length_; }
  std::size_t chain_bound() const { return options_.max_chain; }
  const Outline& outline() const { return outline_; }

  /// 0 for core squares, the piece position i >= 1 otherwise.
  int owner(std::size_t square) const { return owner_[square]; }

  /// p lies in H_i: inside the domain, closer than delta to the piece, and
  /// joined to its nearest point of the piece by a segment inside the domain.
  bool in_expanded(int i, Point p) const;
  /// H_i and H_j intersect, decided on square pairs closer than 2 delta.
  bool expanded_intersect(int i, int j) const;
  /// Bounding box of H_i.
  Box expanded_bbox(int i) const;

 private:
  friend LayerDecomposition build_layers(const WhitneyDecomposition&, int, const LayerOptions&);

  const WhitneyDecomposition* w_ = nullptr;
  CoreRegion core_;
  Outline outline_;
  double delta_ = 0.0;
  std::vector<BoundaryPiece> pieces_;
  std::vector<int> owner_;
  std::vector<std::vector<char>> meets_;
  std::vector<AnchorChain> chains_;
  std::size_t max_chain_length_ = 0;
  LayerOptions options_;
};

/// Core, pieces (merged until H_i meets H_j exactly when |i-j| <= 1
/// cyclically), anchors and chains. Throws ConstructionError if fewer than
/// three pieces survive or a piece has no anchor.
LayerDecomposition build_layers(const WhitneyDecomposition& w, int n,
                                const LayerOptions& options = {});

/// Smooth partition of unity psi_0 (core), psi_1..psi_l (pieces) on the
/// Whitney cover. Each square contributes the tensor product of mollified
/// indicators of its sides enlarged by r = 2^-n-5, mollified at radius r, so a
/// group's sum theta is >= 1 on its own squares and vanishes 2r away from them.
class PartitionOfUnity {
 public:
  PartitionOfUnity(const LayerDecomposition& layers, int order);

  int order() const { return order_; }
  double radius() const { return radius_; }
  std::size_t num_members() const { return layers_->num_pieces() + 1; }
  const LayerDecomposition& layers() const { return *layers_; }

  /// Nonzero members at p with their jets. Throws PreconditionError when p is
  /// outside every support (sum of theta vanishes).
  void evaluate(Point p, int order, std::vector<std::pair<int, Jet>>& out) const;
  Jet jet(int member, Point p, int order) const;
  double value(int member, Point p) const;

  /// Some square of another group lies within 2r of the box, so several
  /// members may be nonzero on it.
  bool mixed(const Box& box, int group) const;
  bool mixed(std::size_t square) const { return mixed_[square] != 0; }
  int group(std::size_t square) const { return layers_->owner(square); }

 private:
  const LayerDecomposition* layers_;
  int order_;
  double radius_;
  std::vector<char> mixed_;
};

}  // namespace osd
