#include "hfock/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "hfock/format.hpp"
#include "hfock/grid.hpp"

namespace hfock {

QuadratureSpec QuadratureSpec::defaults(double alpha, double extent) {
  require(alpha > 0.0, "alpha must be positive");
  const double scale = 1.0 / std::sqrt(alpha);
  QuadratureSpec spec;
  spec.radius = std::max(6.0 * scale, std::max(extent, 0.0) + 6.0 * scale);
  spec.step = 0.05 * scale;
  spec.nodes_per_axis = std::max(64, static_cast<int>(std::ceil(spec.radius * 24.0 / scale)));
  spec.scheme = Scheme::Midpoint;
  return spec;
}

QuadratureSpec QuadratureSpec::coarsened() const {
  QuadratureSpec c = *this;
  c.step = 2.0 * step;
  c.nodes_per_axis = std::max(2, nodes_per_axis / 2);
  return c;
}

void QuadratureSpec::validate() const {
  require(std::isfinite(radius) && radius > 0.0, "quadrature radius must be positive");
  if (scheme == Scheme::Midpoint) {
    require(std::isfinite(step) && step > 0.0, "quadrature step must be positive");
    require(step <= 2.0 * radius, "quadrature step exceeds the integration square");
  } else {
    require(nodes_per_axis >= 2, "Gauss-Legendre needs at least 2 nodes per axis");
  }
}

namespace {

GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  require(n >= 1, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

AxisRule axis_rule(const QuadratureSpec& spec, double lo, double hi) {
  spec.validate();
  require(hi > lo, "axis_rule: empty interval");
  AxisRule ax;
  if (spec.scheme == Scheme::Midpoint) {
    const auto n = static_cast<int>(std::ceil((hi - lo) / spec.step - 1e-9));
    const double h = (hi - lo) / n;
    ax.x.resize(static_cast<std::size_t>(n));
    ax.w.assign(static_cast<std::size_t>(n), h);
    for (int i = 0; i < n; ++i) ax.x[static_cast<std::size_t>(i)] = lo + (i + 0.5) * h;
  } else {
    const GaussLegendreRule gl = gauss_legendre(spec.nodes_per_axis);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    ax.x.resize(gl.nodes.size());
    ax.w.resize(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      ax.x[i] = mid + half * gl.nodes[i];
      ax.w[i] = half * gl.weights[i];
    }
  }
  return ax;
}

std::vector<WeightedPoint> disc_nodes(Complex center, double radius, const PolarRule& rule) {
  require(radius > 0.0, "disc_nodes: radius must be positive");
  const GaussLegendreRule gl = gauss_legendre(rule.radial_nodes);
  const double dtheta = 2.0 * kPi / rule.angular_nodes;
  const double half = 0.5 * radius;
  std::vector<WeightedPoint> out;
  out.reserve(gl.nodes.size() * static_cast<std::size_t>(rule.angular_nodes));
  for (int k = 0; k < rule.angular_nodes; ++k) {
    const Complex dir = std::polar(1.0, k * dtheta);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = half + half * gl.nodes[q];
      out.push_back({center + t * dir, gl.weights[q] * half * t * dtheta});
    }
  }
  return out;
}

void detail::throw_non_finite(Complex node) {
  throw NumericError("non-finite integrand sample at node (" + format_real(node.real()) + ", " +
                     format_real(node.imag()) + ")");
}

GridSpec GridSpec::spanning(double lo, double hi, int n) {
  require(n >= 1, "grid needs at least one point per axis");
  require(hi >= lo, "grid bounds reversed");
  GridSpec g;
  g.origin = Complex(lo, lo);
  g.step = n > 1 ? (hi - lo) / (n - 1) : std::max(hi - lo, 1.0);
  g.nx = n;
  g.ny = n;
  return g;
}

GridSpec GridSpec::cells(double lo, double hi, double step) {
  require(step > 0.0, "grid step must be positive");
  require(hi > lo, "grid bounds reversed");
  const auto n = static_cast<int>(std::ceil((hi - lo) / step - 1e-9));
  GridSpec g;
  g.step = (hi - lo) / n;
  g.origin = Complex(lo + 0.5 * g.step, lo + 0.5 * g.step);
  g.nx = n;
  g.ny = n;
  return g;
}

void GridSpec::validate() const {
  require(nx >= 1 && ny >= 1, "grid is empty");
  require(std::isfinite(step) && step > 0.0, "grid step must be positive");
  require(is_finite(origin), "grid origin must be finite");
}

}  // namespace hfock
