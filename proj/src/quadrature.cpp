#include "eisenrest/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "eisenrest/errors.hpp"

namespace eisenrest::quad {

Rule composite_gauss_legendre(double a, double b, int panels) {
  if (!(b > a) || panels < 1) throw DomainError("gauss_legendre: need b > a and panels >= 1");
  using G = boost::math::quadrature::gauss<double, kPanelOrder>;
  const auto& x = G::abscissa();  // nonnegative half, x[0] > 0 for even order
  const auto& w = G::weights();
  Rule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * kPanelOrder);
  rule.weights.reserve(rule.nodes.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = p + 1 == panels ? b : a + (p + 1) * h;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t k = x.size(); k-- > 0;) {
      rule.nodes.push_back(mid - half * x[k]);
      rule.weights.push_back(half * w[k]);
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      rule.nodes.push_back(mid + half * x[k]);
      rule.weights.push_back(half * w[k]);
    }
  }
  return rule;
}

Rule gauss_legendre_nodes(double a, double b, int nodes) {
  if (nodes < 1) throw DomainError("gauss_legendre: need at least one node");
  return composite_gauss_legendre(a, b, (nodes + kPanelOrder - 1) / kPanelOrder);
}

}  // namespace eisenrest::quad
