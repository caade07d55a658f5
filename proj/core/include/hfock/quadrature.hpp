#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hfock/types.hpp"

namespace hfock {

enum class Scheme { Midpoint, GaussLegendre };

/// Tensor-product rule on the truncated square [-radius, radius]^2.
struct QuadratureSpec {
  double radius = 6.0;
  double step = 0.05;       // Midpoint only
  int nodes_per_axis = 200; // GaussLegendre only
  Scheme scheme = Scheme::Midpoint;

  /// R = max(6/sqrt(alpha), extent + 6/sqrt(alpha)), h = 0.05/sqrt(alpha).
  static QuadratureSpec defaults(double alpha, double extent = 0.0);

  /// Same scheme at half resolution (step doubled / node count halved).
  QuadratureSpec coarsened() const;

  void validate() const;
};

/// Nodes and weights of an n-point rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// One axis of the tensor rule restricted to [lo, hi].
struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;
};

AxisRule axis_rule(const QuadratureSpec& spec, double lo, double hi);

struct Circle {
  Complex center;
  double radius;
};

/// Radial Gauss-Legendre x angular trapezoid rule on a disc.
struct PolarRule {
  int radial_nodes = 24;
  int angular_nodes = 512;
};

struct WeightedPoint {
  Complex point;
  double weight;
};

/// Nodes of the polar rule on B(center, radius) with their dA weights.
std::vector<WeightedPoint> disc_nodes(Complex center, double radius, const PolarRule& rule);

struct Estimate {
  double value;
  double error;
};

namespace detail {

/// Neumaier-compensated running sum; accumulation order is the call order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  void add(double x) { s_.add(x); }
  double value() const { return s_.value(); }

 private:
  CompensatedSum s_;
};

template <>
class Accumulator<Complex> {
 public:
  void add(Complex x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(Complex v) { return is_finite(v); }

[[noreturn]] void throw_non_finite(Complex node);

}  // namespace detail

/// Integral of f over the plane against dA, truncated to the spec's square.
template <class F>
auto integrate_plane(F&& f, const QuadratureSpec& spec) {
  using R = std::decay_t<decltype(f(Complex{}))>;
  spec.validate();
  const AxisRule ax = axis_rule(spec, -spec.radius, spec.radius);
  detail::Accumulator<R> total;
  for (std::size_t j = 0; j < ax.x.size(); ++j) {
    detail::Accumulator<R> row;
    for (std::size_t i = 0; i < ax.x.size(); ++i) {
      const Complex z(ax.x[i], ax.x[j]);
      const R v = f(z);
      if (!detail::finite_value(v)) detail::throw_non_finite(z);
      row.add(v * ax.w[i]);
    }
    total.add(row.value() * ax.w[j]);
  }
  return total.value();
}

/// Integral plus the difference against the half-resolution rule.
template <class F>
Estimate integrate_plane_estimate(F&& f, const QuadratureSpec& spec) {
  const double full = integrate_plane(f, spec);
  const double half = integrate_plane(f, spec.coarsened());
  return {full, std::abs(full - half)};
}

/// Integral of f over the disc B(center, radius) against dA. Each ray from
/// the center is split wherever it crosses one of `breaks`, so integrands
/// that jump across those circles are still integrated piecewise-smoothly.
template <class F>
double integrate_disc(F&& f, Complex center, double radius, const PolarRule& rule,
                      std::span<const Circle> breaks = {}) {
  require(radius > 0.0, "integrate_disc: radius must be positive");
  const GaussLegendreRule gl = gauss_legendre(rule.radial_nodes);
  const int na = rule.angular_nodes;
  const double dtheta = 2.0 * kPi / na;
  std::vector<double> cuts;
  detail::CompensatedSum total;
  for (int k = 0; k < na; ++k) {
    const double theta = k * dtheta;
    const Complex dir(std::cos(theta), std::sin(theta));
    cuts.assign({0.0, radius});
    for (const Circle& c : breaks) {
      const Complex off = center - c.center;
      const double b = (std::conj(dir) * off).real();
      const double q = std::norm(off) - c.radius * c.radius;
      const double disc = b * b - q;
      if (disc <= 0.0) continue;
      const double s = std::sqrt(disc);
      for (double t : {-b - s, -b + s}) {
        if (t > 0.0 && t < radius) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    detail::CompensatedSum ray;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double a = cuts[s];
      const double b = cuts[s + 1];
      if (b - a <= 0.0) continue;
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double t = mid + half * gl.nodes[q];
        const Complex z = center + t * dir;
        const double v = f(z);
        if (!std::isfinite(v)) detail::throw_non_finite(z);
        ray.add(gl.weights[q] * half * t * v);
      }
    }
    total.add(ray.value());
  }
  return total.value() * dtheta;
}

}  // namespace hfock
