#include "noma_secrecy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noma_secrecy {

PositionNodes position_nodes(int U, double radius, double alpha) {
  if (U < 1) {
    throw std::invalid_argument("position_nodes: U must be >= 1");
  }
  if (radius < 0.0) {
    throw std::invalid_argument("position_nodes: radius must be >= 0");
  }
  PositionNodes nodes;
  nodes.theta.resize(U);
  nodes.b.resize(U);
  nodes.c.resize(U);
  nodes.r.resize(U);
  const double pi = std::numbers::pi;
  for (int u = 1; u <= U; ++u) {
    const double theta = std::cos((2.0 * u - 1.0) * pi / (2.0 * U));
    const double r = radius * (theta + 1.0) / 2.0;
    nodes.theta[u - 1] = theta;
    nodes.b[u - 1] = pi / (2.0 * U) * std::sqrt(1.0 - theta * theta) * (theta + 1.0);
    nodes.c[u - 1] = 1.0 + std::pow(r, alpha);
    nodes.r[u - 1] = r;
  }
  return nodes;
}

double integrate_finite_fn(const std::function<double(double)>& f, double a,
                           double b, double rel_tol) {
  return integrate_finite(f, a, b, rel_tol);
}

double integrate_semi_infinite_fn(const std::function<double(double)>& f,
                                  double rel_tol) {
  return integrate_semi_infinite(f, rel_tol);
}

} // namespace noma_secrecy
