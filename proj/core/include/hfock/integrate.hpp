#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <type_traits>
#include <vector>

#include "hfock/kernel.hpp"
#include "hfock/measure.hpp"
#include "hfock/quadrature.hpp"

namespace hfock {

/// A measure reduced to weighted points. Atomic measures map to their atoms
/// exactly; densities become the tensor rule on the support disc (clipped to
/// the quadrature square) with weights w_i w_j phi(u), zero nodes dropped.
/// Midpoint cells crossed by the support circle or a jump of phi carry the
/// 16x16 sub-cell average of phi (restricted to the support) instead.
/// Nodes are stored row by row with ascending y, then ascending x.
class MeasureNodes {
 public:
  using Node = WeightedPoint;

  struct Box {
    double xlo, xhi, ylo, yhi;
  };

  MeasureNodes(const Measure& mu, const QuadratureSpec& spec);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool exact() const { return exact_; }

  /// Visits every node in the union of the closed boxes exactly once, in
  /// storage order.
  template <class Fn>
  void for_each_in_boxes(std::span<const Box> boxes, Fn&& fn) const {
    auto inside = [&](Complex p) {
      for (const Box& b : boxes) {
        if (p.real() >= b.xlo && p.real() <= b.xhi && p.imag() >= b.ylo && p.imag() <= b.yhi) return true;
      }
      return false;
    };
    if (exact_) {
      for (const Node& n : nodes_) {
        if (inside(n.point)) fn(n);
      }
      return;
    }
    if (boxes.empty()) return;
    double ylo = boxes[0].ylo;
    double yhi = boxes[0].yhi;
    for (const Box& b : boxes) {
      ylo = std::min(ylo, b.ylo);
      yhi = std::max(yhi, b.yhi);
    }
    std::vector<std::pair<double, double>> spans;
    auto r0 = std::lower_bound(row_y_.begin(), row_y_.end(), ylo) - row_y_.begin();
    for (auto r = static_cast<std::size_t>(r0); r < row_y_.size() && row_y_[r] <= yhi; ++r) {
      spans.clear();
      for (const Box& b : boxes) {
        if (row_y_[r] >= b.ylo && row_y_[r] <= b.yhi) spans.emplace_back(b.xlo, b.xhi);
      }
      if (spans.empty()) continue;
      std::sort(spans.begin(), spans.end());
      auto first = nodes_.begin() + static_cast<std::ptrdiff_t>(row_begin_[r]);
      auto last = nodes_.begin() + static_cast<std::ptrdiff_t>(row_begin_[r + 1]);
      double done = -std::numeric_limits<double>::infinity();
      for (auto [lo, hi] : spans) {
        if (hi <= done) continue;
        auto it = std::lower_bound(first, last, lo, [](const Node& n, double x) { return n.point.real() < x; });
        for (; it != last && it->point.real() <= hi; ++it) {
          if (it->point.real() > done) fn(*it);
        }
        done = hi;
      }
    }
  }

 private:
  std::vector<Node> nodes_;
  std::vector<double> row_y_;
  std::vector<std::size_t> row_begin_;
  bool exact_ = true;
};

template <class F>
auto integrate_nodes(const MeasureNodes& nodes, F&& f) {
  using R = std::decay_t<decltype(f(Complex{}))>;
  detail::Accumulator<R> total;
  for (const auto& n : nodes.nodes()) {
    const R v = f(n.point);
    if (!detail::finite_value(v)) detail::throw_non_finite(n.point);
    total.add(n.weight * v);
  }
  return total.value();
}

/// Integral of f against mu.
template <class F>
auto integrate_measure(const Measure& mu, F&& f, const QuadratureSpec& spec) {
  return integrate_nodes(MeasureNodes(mu, spec), f);
}

/// Integral of f against the Gaussian measure d(lambda_alpha).
template <class F>
auto integrate_gaussian(const FockConfig& cfg, F&& f, const QuadratureSpec& spec) {
  const double a = cfg.alpha;
  return (a / kPi) * integrate_plane([&](Complex z) { return f(z) * std::exp(-a * std::norm(z)); }, spec);
}

}  // namespace hfock
