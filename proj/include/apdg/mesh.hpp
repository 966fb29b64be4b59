#ifndef APDG_MESH_HPP
#define APDG_MESH_HPP

#include <vector>

namespace apdg {

enum class BoundaryKind { periodic, inflow };

// One uniformly divided piece of a piecewise-uniform mesh.
struct MeshSegment {
  double left;
  double right;
  int cells;
};

class Mesh1D {
 public:
  Mesh1D(std::vector<double> edges, BoundaryKind kind);

  static Mesh1D uniform(double left, double right, int cells, BoundaryKind kind);
  static Mesh1D piecewise_uniform(const std::vector<MeshSegment>& segments, BoundaryKind kind);

  int cells() const { return static_cast<int>(widths_.size()); }
  const std::vector<double>& edges() const { return edges_; }
  double edge(int i) const { return edges_[i]; }
  double width(int i) const { return widths_[i]; }
  double center(int i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }
  double left() const { return edges_.front(); }
  double right() const { return edges_.back(); }
  double length() const { return right() - left(); }
  double h_max() const { return h_max_; }
  double h_min() const { return h_min_; }
  BoundaryKind boundary() const { return kind_; }
  bool periodic() const { return kind_ == BoundaryKind::periodic; }

  // Cell containing x (the right cell wins on interior edges); x is clamped to the domain.
  int locate(double x) const;
  double to_reference(int cell, double x) const;
  double from_reference(int cell, double xi) const;

 private:
  std::vector<double> edges_;
  std::vector<double> widths_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
  BoundaryKind kind_;
};

}  // namespace apdg

#endif
