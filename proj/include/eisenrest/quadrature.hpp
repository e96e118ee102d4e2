#pragma once

#include <vector>

namespace eisenrest::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

inline constexpr int kPanelOrder = 16;

/// Composite 16-point Gauss-Legendre on [a, b] with `panels` equal panels.
Rule composite_gauss_legendre(double a, double b, int panels);

/// Same, sized by total node count (rounded up to a multiple of 16).
Rule gauss_legendre_nodes(double a, double b, int nodes);

}  // namespace eisenrest::quad
