#ifndef NOMA_SECRECY_QUADRATURE_HPP
#define NOMA_SECRECY_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

// Adaptive Gauss-Kronrod quadrature and the Chebyshev-Gauss position nodes
// used to average over user positions on a disc.

namespace noma_secrecy {

// Chebyshev-Gauss nodes for averaging a function of distance over a disc of
// the given radius:  theta_u = cos((2u-1)pi/(2U)), weight
// b_u = (pi/2U) sqrt(1-theta_u^2)(theta_u+1), path-loss factor
// c_u = 1 + [radius(theta_u+1)/2]^alpha.  sum(b_u) -> 1 as U grows.
struct PositionNodes {
  std::vector<double> theta;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> r; // node radius, radius*(theta_u+1)/2
};

PositionNodes position_nodes(int U, double radius, double alpha);

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double bound)
      : std::runtime_error(what), partial_value(partial), error_bound(bound) {}
  double partial_value;
  double error_bound;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (positive abscissae).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEstimate {
  double value;
  double error;
};

template <class F>
GkEstimate gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    result_kronrod += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) { // Kronrod points 1,3,5 coincide with Gauss points
      result_gauss += kWg[i / 2] * (f1 + f2);
    }
  }
  GkEstimate est;
  est.value = result_kronrod * half;
  est.error = std::abs((result_kronrod - result_gauss) * half);
  if (!std::isfinite(est.value)) {
    est.value = 0.0;
    est.error = std::numeric_limits<double>::infinity();
  }
  return est;
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
double adaptive_gk(const F& f, double a, double b, double rel_tol,
                   int max_intervals, const char* what) {
  GkEstimate first = gk15(f, a, b);
  std::priority_queue<Interval> heap;
  heap.push({a, b, first.value, first.error});
  double total_value = first.value;
  double total_error = first.error;
  int count = 1;
  const double abs_floor = 1e-300;
  while (total_error > std::max(rel_tol * std::abs(total_value), abs_floor)) {
    if (count >= max_intervals) {
      throw QuadratureError(std::string(what) +
                                ": no convergence after " +
                                std::to_string(count) + " subdivisions",
                            total_value, total_error);
    }
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval collapsed to machine precision; accept its estimate
      if (heap.empty()) break;
      total_error -= worst.error;
      worst.error = 0.0;
      heap.push(worst);
      continue;
    }
    GkEstimate left = gk15(f, worst.a, mid);
    GkEstimate right = gk15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++count;
  }
  return total_value;
}

} // namespace detail

// Integral over [a, b]. A square-root change of variable is applied at the
// lower limit, so integrable power singularities there (the x^{-delta}
// kernels of the eavesdropper densities) are tamed before adapting.
template <class F>
double integrate_finite(const F& f, double a, double b, double rel_tol = 1e-6,
                        int max_intervals = 2000) {
  if (!(b > a)) {
    if (b == a) return 0.0;
    throw std::invalid_argument("integrate_finite: requires a < b");
  }
  const double width = b - a;
  auto g = [&](double u) { return f(a + width * u * u) * 2.0 * width * u; };
  return detail::adaptive_gk(g, 0.0, 1.0, rel_tol, max_intervals,
                             "integrate_finite");
}

// Integral over [lo, inf) of an absolutely integrable integrand with
// eventually-exponential decay, via the map x = lo + t/(1-t) on [0, 1).
template <class F>
double integrate_semi_infinite_from(const F& f, double lo,
                                    double rel_tol = 1e-6,
                                    int max_intervals = 4000) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    if (om < 1e-14) return 0.0; // decay precondition: tail is negligible
    const double x = lo + t / om;
    return f(x) / (om * om);
  };
  return detail::adaptive_gk(g, 0.0, 1.0, rel_tol, max_intervals,
                             "integrate_semi_infinite");
}

template <class F>
double integrate_semi_infinite(const F& f, double rel_tol = 1e-6,
                               int max_intervals = 4000) {
  return integrate_semi_infinite_from(f, 0.0, rel_tol, max_intervals);
}

// std::function conveniences for bindings and tests.
double integrate_finite_fn(const std::function<double(double)>& f, double a,
                           double b, double rel_tol = 1e-6);
double integrate_semi_infinite_fn(const std::function<double(double)>& f,
                                  double rel_tol = 1e-6);

} // namespace noma_secrecy

#endif
