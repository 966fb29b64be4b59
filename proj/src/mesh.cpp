#include "apdg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace apdg {

Mesh1D::Mesh1D(std::vector<double> edges, BoundaryKind kind) : edges_(std::move(edges)), kind_(kind) {
  if (edges_.size() < 3) throw std::invalid_argument("Mesh1D: need at least 2 cells");
  widths_.resize(edges_.size() - 1);
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    widths_[i] = edges_[i + 1] - edges_[i];
    if (!(widths_[i] > 0.0)) throw std::invalid_argument("Mesh1D: edges must be strictly increasing");
  }
  h_max_ = *std::max_element(widths_.begin(), widths_.end());
  h_min_ = *std::min_element(widths_.begin(), widths_.end());
}

Mesh1D Mesh1D::uniform(double left, double right, int cells, BoundaryKind kind) {
  return piecewise_uniform({{left, right, cells}}, kind);
}

Mesh1D Mesh1D::piecewise_uniform(const std::vector<MeshSegment>& segments, BoundaryKind kind) {
  if (segments.empty()) throw std::invalid_argument("Mesh1D: no segments");
  std::vector<double> edges{segments.front().left};
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const MeshSegment& seg = segments[s];
    if (seg.cells < 1 || !(seg.right > seg.left)) throw std::invalid_argument("Mesh1D: bad segment");
    if (s > 0 && seg.left != segments[s - 1].right)
      throw std::invalid_argument("Mesh1D: segments must be contiguous");
    const double h = (seg.right - seg.left) / seg.cells;
    for (int i = 1; i < seg.cells; ++i) edges.push_back(seg.left + i * h);
    edges.push_back(seg.right);
  }
  return Mesh1D(std::move(edges), kind);
}

int Mesh1D::locate(double x) const {
  if (x <= edges_.front()) return 0;
  if (x >= edges_.back()) return cells() - 1;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  return static_cast<int>(it - edges_.begin()) - 1;
}

double Mesh1D::to_reference(int cell, double x) const {
  return 2.0 * (x - edges_[cell]) / widths_[cell] - 1.0;
}

double Mesh1D::from_reference(int cell, double xi) const {
  return edges_[cell] + 0.5 * (xi + 1.0) * widths_[cell];
}

}  // namespace apdg
