#include "hfock/integrate.hpp"

namespace hfock {

MeasureNodes::MeasureNodes(const Measure& mu, const QuadratureSpec& spec) {
  if (const auto* a = mu.as_atomic()) {
    nodes_.reserve(a->atoms.size());
    for (const Atom& x : a->atoms) nodes_.push_back({x.location, x.weight});
    exact_ = true;
    return;
  }
  exact_ = false;
  const auto& d = *mu.as_density();
  const double half = std::min(d.support_radius, spec.radius);
  const AxisRule ax = axis_rule(spec, -half, half);
  const double s2 = d.support_radius * d.support_radius;

  // Midpoint cells cut by the support circle or a jump of the profile get
  // the cell average of the profile instead of the centre value, which
  // turns the O(h) staircase error at the cut into a sub-sampling error.
  std::vector<Circle> cuts = discontinuities(d.profile);
  cuts.push_back({Complex(0.0, 0.0), d.support_radius});
  const bool cells = spec.scheme == Scheme::Midpoint;
  auto cut_cell = [&](Complex c, double h) {
    const double reach = h * 0.7072;  // half diagonal plus slack
    for (const Circle& k : cuts) {
      if (std::abs(std::abs(c - k.center) - k.radius) <= reach) return true;
    }
    return false;
  };
  auto cell_average = [&](Complex c, double hx, double hy) {
    constexpr int kSub = 16;
    double sum = 0.0;
    for (int b = 0; b < kSub; ++b) {
      for (int a = 0; a < kSub; ++a) {
        const Complex v = c + Complex(hx * ((a + 0.5) / kSub - 0.5), hy * ((b + 0.5) / kSub - 0.5));
        if (std::norm(v) < s2) sum += evaluate(d.profile, v);
      }
    }
    return sum / (kSub * kSub);
  };

  row_begin_.push_back(0);
  for (std::size_t j = 0; j < ax.x.size(); ++j) {
    for (std::size_t i = 0; i < ax.x.size(); ++i) {
      const Complex u(ax.x[i], ax.x[j]);
      double w = 0.0;
      if (cells && cut_cell(u, std::max(ax.w[i], ax.w[j]))) {
        w = ax.w[i] * ax.w[j] * cell_average(u, ax.w[i], ax.w[j]);
      } else if (std::norm(u) < s2) {
        w = ax.w[i] * ax.w[j] * evaluate(d.profile, u);
      }
      if (w > 0.0) nodes_.push_back({u, w});
    }
    row_y_.push_back(ax.x[j]);
    row_begin_.push_back(nodes_.size());
  }
}

}  // namespace hfock
