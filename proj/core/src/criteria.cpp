#include "hfock/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "hfock/berezin.hpp"
#include "hfock/format.hpp"
#include "hfock/integrate.hpp"
#include "hfock/operator.hpp"

namespace hfock {

namespace {

constexpr PolarRule kProbeDiscRule{16, 128};
constexpr double kEigenFloor = 1e-3;
constexpr int kEmbeddingDegree = 5;
constexpr int kRadialSamples = 12;

// Probe squares [-inner, inner]^2 and [-outer, outer]^2, outer = 1.5 inner
// up to rounding to the step.
struct Window {
  double step;
  int k_inner;
  int k_outer;
  bool truncated;

  double inner() const { return k_inner * step; }
  double outer() const { return k_outer * step; }
};

struct Pair {
  double inner;
  double outer;
};

// Radius beyond which the measure is negligible: the atom extent, or for a
// density the outermost circle where the profile still exceeds 1e-12 of its peak.
double effective_extent(const Measure& mu) {
  if (mu.as_atomic()) return mu.extent();
  const auto& d = *mu.as_density();
  const double peak = supremum(d.profile);
  if (peak == 0.0) return 0.0;
  constexpr int kRings = 400;
  constexpr int kAngles = 64;
  for (int k = kRings; k >= 1; --k) {
    const double rho = d.support_radius * k / kRings;
    for (int a = 0; a < kAngles; ++a) {
      if (evaluate(d.profile, std::polar(rho * (1.0 - 1e-12), 2.0 * kPi * a / kAngles)) > 1e-12 * peak) {
        return rho;
      }
    }
  }
  return 0.0;
}

Window probe_window(const FockConfig& cfg, const Measure& mu, double r, const ProbeOptions& probe) {
  const double scale = 1.0 / std::sqrt(cfg.alpha);
  require(probe.window >= 0.0 && std::isfinite(probe.window), "probe window must be finite and >= 0");
  require(probe.step >= 0.0 && std::isfinite(probe.step), "probe step must be finite and >= 0");
  const bool truncated = total_mass(mu).truncated;
  double w = probe.window;
  if (w == 0.0) {
    if (truncated) {
      // keep the larger window inside the support so edge effects stay out
      const double s = mu.extent();
      w = (s - r - 3.0 * scale) / 1.5;
      if (w <= 0.0) w = s / 3.0;
    } else {
      w = effective_extent(mu) + r + 3.0 * scale;
    }
  }
  const double h = probe.step > 0.0 ? probe.step : 0.25 * scale;
  Window win{};
  win.k_inner = std::max(1, static_cast<int>(std::lround(w / h)));
  win.step = w / win.k_inner;
  win.k_outer = static_cast<int>(std::ceil(1.5 * win.k_inner - 1e-9));
  win.truncated = truncated;
  return win;
}

// Sup of fn over the grid points k*step, inner and outer squares.
template <class F>
Pair window_sup(F&& fn, const Window& win) {
  Pair out{0.0, 0.0};
  for (int j = -win.k_outer; j <= win.k_outer; ++j) {
    for (int i = -win.k_outer; i <= win.k_outer; ++i) {
      const double v = fn(Complex(i * win.step, j * win.step));
      if (!std::isfinite(v)) throw NumericError("non-finite probe value");
      out.outer = std::max(out.outer, v);
      if (std::abs(i) <= win.k_inner && std::abs(j) <= win.k_inner) out.inner = std::max(out.inner, v);
    }
  }
  return out;
}

// L^p norm of fn by the midpoint rule on cells of side step.
template <class F>
Pair window_lp(F&& fn, const Window& win, double p) {
  if (std::isinf(p)) return window_sup(fn, win);
  detail::CompensatedSum inner;
  detail::CompensatedSum outer;
  for (int j = -win.k_outer; j < win.k_outer; ++j) {
    for (int i = -win.k_outer; i < win.k_outer; ++i) {
      const double v = fn(Complex((i + 0.5) * win.step, (j + 0.5) * win.step));
      if (!std::isfinite(v)) throw NumericError("non-finite probe value");
      const double t = std::pow(std::abs(v), p);
      outer.add(t);
      if (i >= -win.k_inner && i < win.k_inner && j >= -win.k_inner && j < win.k_inner) inner.add(t);
    }
  }
  const double area = win.step * win.step;
  return {std::pow(inner.value() * area, 1.0 / p), std::pow(outer.value() * area, 1.0 / p)};
}

double lattice_lp(const Measure& mu, const LatticeSpec& lattice, double r, double p) {
  detail::CompensatedSum sum;
  double best = 0.0;
  for (Complex a : lattice_points(lattice)) {
    const double m = ball_mass(mu, a, r);
    best = std::max(best, m);
    if (!std::isinf(p)) sum.add(std::pow(m, p));
  }
  return std::isinf(p) ? best : std::pow(sum.value(), 1.0 / p);
}

double probe_ball_mass(const Measure& mu, Complex z, double r) { return ball_mass(mu, z, r, kProbeDiscRule); }

std::string growth_threshold(const std::string& between) {
  return "relative growth " + between + ": > " + format_real(kGrowthViolated) + " violated, < " +
         format_real(kGrowthStable) + " satisfied";
}

std::string window_threshold() { return growth_threshold("from W to 1.5W"); }

std::string trunc_threshold() { return growth_threshold("between the last two truncations"); }

std::string decay_threshold(double t) { return "value at largest radius < " + format_real(t) + " * profile max"; }

std::string n_name(const char* prefix, int n) { return std::string(prefix) + "N=" + std::to_string(n); }

void add_pair(Arm& arm, const std::string& what, Pair v) {
  arm.values.push_back({what + "@W", v.inner});
  arm.values.push_back({what + "@1.5W", v.outer});
}

Arm window_arm(std::string id, std::string quantity, const std::string& what, Pair v) {
  Arm arm;
  arm.id = std::move(id);
  arm.quantity = std::move(quantity);
  add_pair(arm, what, v);
  arm.threshold = window_threshold();
  arm.verdict = growth_verdict(v.inner, v.outer);
  return arm;
}

Arm profile_arm(std::string id, std::string quantity, const std::vector<RadialSample>& profile) {
  Arm arm;
  arm.id = std::move(id);
  arm.quantity = std::move(quantity);
  for (const auto& s : profile) arm.values.push_back({"radius=" + format_real(s.radius), s.max});
  arm.threshold = decay_threshold(1e-3);
  arm.verdict = decays(profile) ? Verdict::Satisfied : Verdict::Violated;
  return arm;
}

Verdict sequence_verdict(const std::vector<double>& v) {
  if (v.size() < 2) return Verdict::Inconclusive;
  return growth_verdict(v[v.size() - 2], v.back());
}

double safe_ratio(double a, double b) {
  if (b == 0.0) return a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return a / b;
}

void require_n_list(const std::vector<int>& n_list) {
  require(!n_list.empty(), "truncation list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    require(n_list[i] >= 0, "truncation cuts must be >= 0");
    if (i > 0) require(n_list[i] > n_list[i - 1], "truncation list must be ascending");
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string scheme_name(Scheme s) { return s == Scheme::Midpoint ? "midpoint" : "gauss-legendre"; }

Report start_report(std::string kind, const FockConfig& cfg, const std::string& measure, const QuadratureSpec& quad) {
  Report rep;
  rep.kind = std::move(kind);
  rep.measure = measure;
  rep.config.emplace_back("alpha", format_real(cfg.alpha));
  rep.config.emplace_back("convention", to_string(cfg.convention));
  rep.config.emplace_back("quad_radius", format_real(quad.radius));
  rep.config.emplace_back("quad_scheme", scheme_name(quad.scheme));
  if (quad.scheme == Scheme::Midpoint) {
    rep.config.emplace_back("quad_step", format_real(quad.step));
  } else {
    rep.config.emplace_back("quad_nodes", std::to_string(quad.nodes_per_axis));
  }
  return rep;
}

void echo_window(Report& rep, const Window& win) {
  rep.config.emplace_back("window", format_real(win.inner()));
  rep.config.emplace_back("window_large", format_real(win.outer()));
  rep.config.emplace_back("probe_step", format_real(win.step));
  rep.config.emplace_back("measure_truncated", win.truncated ? "true" : "false");
}

// Ratio of the weighted L^2(mu) norm to the weighted L^2(dA) norm for the
// published test family: e_n with |n| <= 5 and h_w on the coarse grid.
Arm embedding_arm(const FockConfig& cfg, const MeasureNodes& nodes, const BerezinTransform& berezin,
                  const Window& win) {
  const double a = cfg.alpha;
  const int dim = 2 * kEmbeddingDegree + 1;
  std::vector<Complex> vals(static_cast<std::size_t>(dim));
  std::vector<detail::CompensatedSum> diag(static_cast<std::size_t>(dim));
  for (const auto& n : nodes.nodes()) {
    weighted_basis_values(cfg, kEmbeddingDegree, n.point, vals);
    for (int k = 0; k < dim; ++k) diag[static_cast<std::size_t>(k)].add(n.weight * std::norm(vals[static_cast<std::size_t>(k)]));
  }
  double poly = 0.0;
  for (const auto& d : diag) poly = std::max(poly, a / kPi * d.value());

  const double coarse = 1.0 / std::sqrt(a);
  const int k_in = std::max(1, static_cast<int>(std::floor(win.inner() / coarse + 1e-9)));
  const int k_out = std::max(k_in, static_cast<int>(std::floor(win.outer() / coarse + 1e-9)));
  Pair kern{0.0, 0.0};
  for (int j = -k_out; j <= k_out; ++j) {
    for (int i = -k_out; i <= k_out; ++i) {
      const Complex w(i * coarse, j * coarse);
      const double v = a / kPi * berezin(w) / normalized_kernel_norm_sq(cfg, w);
      kern.outer = std::max(kern.outer, v);
      if (std::abs(i) <= k_in && std::abs(j) <= k_in) kern.inner = std::max(kern.inner, v);
    }
  }
  const Pair total{std::max(poly, kern.inner), std::max(poly, kern.outer)};
  Arm arm = window_arm("b", "max embedding ratio (p=2) over e_n (|n|<=5) and h_w", "ratio", total);
  arm.values.insert(arm.values.begin(), {"polynomial_family", poly});
  arm.note = "ratio = integral |f|^2 e^{-alpha|u|^2} dmu / integral |f|^2 e^{-alpha|u|^2} dA; h_w on a grid of step " +
             format_real(coarse);
  return arm;
}

std::vector<double> default_radii(const Window& win, std::vector<double> radii) {
  if (radii.empty()) {
    for (int k = 0; k < kRadialSamples; ++k) radii.push_back(win.outer() * k / (kRadialSamples - 1));
  }
  require(radii.size() >= 3, "radial profiles need at least 3 radii");
  return radii;
}

void finish(Report& rep) { rep.overall = combine_verdicts(rep.arms); }

nlohmann::ordered_json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::strtod(format_real(v).c_str(), nullptr);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied:
      return "satisfied";
    case Verdict::Violated:
      return "violated";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict growth_verdict(double at_window, double at_larger_window) {
  const double a = std::abs(at_window);
  const double b = std::abs(at_larger_window);
  if (!std::isfinite(a) || !std::isfinite(b)) return Verdict::Violated;
  if (a == 0.0 && b == 0.0) return Verdict::Satisfied;
  if (a == 0.0) return Verdict::Violated;
  const double growth = std::abs(b - a) / a;
  if (growth > kGrowthViolated) return Verdict::Violated;
  if (growth < kGrowthStable) return Verdict::Satisfied;
  return Verdict::Inconclusive;
}

const Arm& Report::arm(const std::string& id) const {
  for (const Arm& a : arms) {
    if (a.id == id) return a;
  }
  throw InvalidArgument("report has no arm '" + id + "'");
}

Verdict combine_verdicts(const std::vector<Arm>& arms) {
  bool any_sat = false;
  bool all_sat = !arms.empty();
  bool any_vio = false;
  for (const Arm& a : arms) {
    any_sat = any_sat || a.verdict == Verdict::Satisfied;
    all_sat = all_sat && a.verdict == Verdict::Satisfied;
    any_vio = any_vio || a.verdict == Verdict::Violated;
  }
  if (all_sat) return Verdict::Satisfied;
  if (any_vio && !any_sat) return Verdict::Violated;
  return Verdict::Inconclusive;
}

Report carleson_report(const FockConfig& cfg, const Measure& mu, double r, const QuadratureSpec& quad,
                       const ProbeOptions& probe) {
  cfg.validate();
  require(r > 0.0 && std::isfinite(r), "r must be positive");
  const Window win = probe_window(cfg, mu, r, probe);
  Report rep = start_report("carleson", cfg, mu.description(), quad);
  rep.config.emplace_back("r", format_real(r));
  echo_window(rep, win);

  // (a) ball masses on the probe grid and on the lattice r Z^2 in the window
  Pair balls = window_sup([&](Complex z) { return probe_ball_mass(mu, z, r); }, win);
  Pair lattice{0.0, 0.0};
  const int m_in = static_cast<int>(std::floor(win.inner() / r + 1e-9));
  const int m_out = static_cast<int>(std::floor(win.outer() / r + 1e-9));
  for (int m = -m_out; m <= m_out; ++m) {
    for (int n = -m_out; n <= m_out; ++n) {
      const double v = ball_mass(mu, Complex(n * r, m * r), r);
      lattice.outer = std::max(lattice.outer, v);
      if (std::abs(n) <= m_in && std::abs(m) <= m_in) lattice.inner = std::max(lattice.inner, v);
    }
  }
  const Pair sup_a{std::max(balls.inner, lattice.inner), std::max(balls.outer, lattice.outer)};
  Arm a = window_arm("a", "sup ball mass mu(B(z,r))", "sup", sup_a);
  a.values.push_back({"lattice_sup@1.5W", lattice.outer});
  rep.arms.push_back(std::move(a));

  const MeasureNodes nodes(mu, quad);
  const BerezinTransform berezin(cfg, mu, quad);
  rep.arms.push_back(embedding_arm(cfg, nodes, berezin, win));

  const Pair sup_c = window_sup(berezin, win);
  rep.arms.push_back(window_arm("c", "sup Berezin transform", "sup", sup_c));

  const double b = rep.arms[1].values.back().value;
  rep.ratios.push_back({"a/c", safe_ratio(sup_a.outer, sup_c.outer)});
  rep.ratios.push_back({"b/c", safe_ratio(b, sup_c.outer)});
  rep.ratios.push_back({"a/b", safe_ratio(sup_a.outer, b)});
  finish(rep);
  return rep;
}

Report vanishing_report(const FockConfig& cfg, const Measure& mu, double r, std::vector<double> radii,
                        const QuadratureSpec& quad, const ProbeOptions& probe) {
  cfg.validate();
  require(r > 0.0 && std::isfinite(r), "r must be positive");
  const Window win = probe_window(cfg, mu, r, probe);
  radii = default_radii(win, std::move(radii));
  Report rep = start_report("vanishing", cfg, mu.description(), quad);
  rep.config.emplace_back("r", format_real(r));
  echo_window(rep, win);

  const BerezinTransform berezin(cfg, mu, quad);
  const auto embed = radial_decay_profile(
      [&](Complex w) { return cfg.alpha / kPi * berezin(w) / normalized_kernel_norm_sq(cfg, w); }, radii);
  const auto balls = radial_decay_profile([&](Complex z) { return probe_ball_mass(mu, z, r); }, radii);
  const auto tilde = radial_decay_profile(berezin, radii);
  rep.arms.push_back(profile_arm("a", "embedding ratio at h_w, max over |w| = radius", embed));
  rep.arms.push_back(profile_arm("b", "ball mass mu(B(z,r)), max over |z| = radius", balls));
  rep.arms.push_back(profile_arm("c", "Berezin transform, max over |z| = radius", tilde));
  finish(rep);
  return rep;
}

Report boundedness_report(const FockConfig& cfg, const Measure& mu, const std::vector<int>& n_list,
                          const QuadratureSpec& quad, const ProbeOptions& probe) {
  cfg.validate();
  require_n_list(n_list);
  const Window win = probe_window(cfg, mu, 1.0 / std::sqrt(cfg.alpha), probe);
  Report rep = start_report("bounded", cfg, mu.description(), quad);
  rep.config.emplace_back("trunc", join_ints(n_list));
  echo_window(rep, win);

  const MeasureNodes nodes(mu, quad);
  Arm a;
  a.id = "a";
  a.quantity = "operator norm lambda_max of the truncation";
  std::vector<double> norms;
  for (int n : n_list) {
    const double l = schatten_norm(spectrum(assemble_nodes(cfg, nodes, n)), std::numeric_limits<double>::infinity());
    norms.push_back(l);
    a.values.push_back({n_name("", n), l});
  }
  a.threshold = trunc_threshold();
  a.verdict = sequence_verdict(norms);
  rep.arms.push_back(std::move(a));

  const BerezinTransform berezin(cfg, mu, quad);
  const Pair sup = window_sup(berezin, win);
  rep.arms.push_back(window_arm("b", "sup Berezin transform", "sup", sup));
  Arm c = embedding_arm(cfg, nodes, berezin, win);
  c.id = "c";
  rep.arms.push_back(std::move(c));

  for (std::size_t i = 0; i < n_list.size(); ++i) {
    rep.checks.push_back({"sup mu~ <= 2 lambda_max at " + n_name("", n_list[i]), sup.outer, 2.0 * norms[i],
                          sup.outer <= 2.0 * norms[i] * (1.0 + 1e-9)});
  }
  rep.ratios.push_back({"sup_mu~/lambda_max", safe_ratio(sup.outer, norms.back())});
  finish(rep);
  return rep;
}

Report compactness_report(const FockConfig& cfg, const Measure& mu, const std::vector<int>& n_list, double r,
                          std::vector<double> radii, const QuadratureSpec& quad, const ProbeOptions& probe) {
  cfg.validate();
  require_n_list(n_list);
  require(r > 0.0 && std::isfinite(r), "r must be positive");
  const Window win = probe_window(cfg, mu, r, probe);
  radii = default_radii(win, std::move(radii));
  Report rep = start_report("compact", cfg, mu.description(), quad);
  rep.config.emplace_back("r", format_real(r));
  rep.config.emplace_back("trunc", join_ints(n_list));
  echo_window(rep, win);

  const MeasureNodes nodes(mu, quad);
  Arm a;
  a.id = "a";
  a.quantity = "eigenvalues >= " + format_real(kEigenFloor) + " * lambda_max";
  std::vector<double> counts;
  std::vector<std::vector<double>> spectra;
  for (int n : n_list) {
    SpectralData s = spectrum(assemble_nodes(cfg, nodes, n));
    const double top = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
    const auto count = std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                     [&](double l) { return top > 0.0 && l >= kEigenFloor * top; });
    counts.push_back(static_cast<double>(count));
    a.values.push_back({n_name("count@", n), static_cast<double>(count)});
    a.values.push_back({n_name("lambda_max@", n), top});
    spectra.push_back(std::move(s.eigenvalues));
  }
  if (spectra.size() >= 2) {
    const auto& x = spectra[spectra.size() - 2];
    const auto& y = spectra.back();
    double drift = 0.0;
    for (std::size_t k = 0; k < 10 && k < x.size() && k < y.size(); ++k) drift = std::max(drift, std::abs(x[k] - y[k]));
    a.values.push_back({"top10_drift", drift});
  }
  a.threshold = "count " + trunc_threshold();
  a.verdict = sequence_verdict(counts);
  rep.arms.push_back(std::move(a));

  const BerezinTransform berezin(cfg, mu, quad);
  rep.arms.push_back(profile_arm("b", "Berezin transform, max over |z| = radius", radial_decay_profile(berezin, radii)));
  rep.arms.push_back(profile_arm(
      "c", "ball mass mu(B(z,r)), max over |z| = radius",
      radial_decay_profile([&](Complex z) { return probe_ball_mass(mu, z, r); }, radii)));
  finish(rep);
  return rep;
}

Report schatten_report(const FockConfig& cfg, const Measure& mu, double p, double r, LatticeSpec lattice,
                       const std::vector<int>& n_list, const QuadratureSpec& quad, const ProbeOptions& probe) {
  cfg.validate();
  require(p >= 1.0, "Schatten exponent p must be >= 1");
  require(r > 0.0 && std::isfinite(r), "r must be positive");
  require_n_list(n_list);
  const Window win = probe_window(cfg, mu, r, probe);
  if (!(lattice.spacing > 0.0)) lattice.spacing = r;
  if (lattice.extent == 0) lattice.extent = std::max(1, static_cast<int>(std::floor(win.inner() / lattice.spacing + 1e-9)));
  lattice.validate();
  LatticeSpec large = lattice;
  large.extent = static_cast<int>(std::ceil(1.5 * lattice.extent - 1e-9));

  Report rep = start_report("schatten", cfg, mu.description(), quad);
  rep.config.emplace_back("p", format_real(p));
  rep.config.emplace_back("r", format_real(r));
  rep.config.emplace_back("trunc", join_ints(n_list));
  rep.config.emplace_back("lattice_spacing", format_real(lattice.spacing));
  rep.config.emplace_back("lattice_extent", std::to_string(lattice.extent));
  echo_window(rep, win);

  const MeasureNodes nodes(mu, quad);
  Arm a;
  a.id = "a";
  a.quantity = "Schatten norm of the truncation";
  std::vector<double> norms;
  for (int n : n_list) {
    norms.push_back(schatten_norm(spectrum(assemble_nodes(cfg, nodes, n)), p));
    a.values.push_back({n_name("", n), norms.back()});
  }
  a.threshold = trunc_threshold();
  a.verdict = sequence_verdict(norms);
  rep.arms.push_back(std::move(a));
  bool monotone = true;
  for (std::size_t i = 1; i < norms.size(); ++i) monotone = monotone && norms[i] >= norms[i - 1] * (1.0 - 1e-10);
  rep.checks.push_back({"Schatten norm non-decreasing in N", norms.front(), norms.back(), monotone});

  const BerezinTransform berezin(cfg, mu, quad);
  const Pair b = window_lp(berezin, win, p);
  rep.arms.push_back(window_arm("b", "L^p norm of the Berezin transform", "norm", b));
  const Pair c = window_lp([&](Complex z) { return probe_ball_mass(mu, z, r) / (kPi * r * r); }, win, p);
  rep.arms.push_back(window_arm("c", "L^p norm of the averaging function mu(B(z,r))/(pi r^2)", "norm", c));

  const double d_small = lattice_lp(mu, lattice, r, p);
  const double d_large = lattice_lp(mu, large, r, p);
  Arm d;
  d.id = "d";
  d.quantity = "l^p norm of lattice ball masses mu(B(a_n,r))";
  d.values.push_back({"extent=" + std::to_string(lattice.extent), d_small});
  d.values.push_back({"extent=" + std::to_string(large.extent), d_large});
  d.threshold = growth_threshold("from lattice extent M to ceil(1.5 M)");
  d.verdict = growth_verdict(d_small, d_large);
  rep.arms.push_back(std::move(d));
  rep.checks.push_back({"lattice l^p non-decreasing in extent", d_small, d_large, d_large >= d_small * (1.0 - 1e-12)});

  const double v[4] = {norms.back(), b.outer, c.outer, d_large};
  const char* ids[4] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) rep.ratios.push_back({std::string(ids[i]) + "/" + ids[j], safe_ratio(v[i], v[j])});
  }
  finish(rep);
  return rep;
}

Report symbol_schatten_report(const FockConfig& cfg, const DensityProfile& phi, double p, double r,
                              const std::vector<int>& n_list, const QuadratureSpec& quad, const ProbeOptions& probe) {
  cfg.validate();
  validate(phi);
  require(p >= 1.0, "Schatten exponent p must be >= 1");
  require(r > 0.0 && std::isfinite(r), "r must be positive");
  require_n_list(n_list);
  const Measure mu = symbol_measure(cfg, phi, quad);
  const Measure raw = Measure::density(phi, quad.radius);
  const Window win = probe_window(cfg, mu, r, probe);

  Report rep = start_report("symbol-schatten", cfg, describe(phi), quad);
  rep.config.emplace_back("p", format_real(p));
  rep.config.emplace_back("r", format_real(r));
  rep.config.emplace_back("trunc", join_ints(n_list));
  echo_window(rep, win);

  const MeasureNodes nodes(mu, quad);
  Arm a;
  a.id = "a";
  a.quantity = "Schatten norm of T_phi truncation";
  std::vector<double> norms;
  std::vector<double> tops;
  for (int n : n_list) {
    const SpectralData s = spectrum(assemble_nodes(cfg, nodes, n));
    norms.push_back(schatten_norm(s, p));
    tops.push_back(schatten_norm(s, std::numeric_limits<double>::infinity()));
    a.values.push_back({n_name("", n), norms.back()});
  }
  a.threshold = trunc_threshold();
  a.verdict = sequence_verdict(norms);
  rep.arms.push_back(std::move(a));

  const BerezinTransform berezin(cfg, mu, quad);
  rep.arms.push_back(window_arm("b", "L^p norm of the Berezin transform of phi", "norm", window_lp(berezin, win, p)));

  const Pair c = window_lp([&](Complex z) { return probe_ball_mass(raw, z, r) / (kPi * r * r); }, win, p);
  Arm arm_c = window_arm("c", "L^p norm of the disc average of phi", "norm_pi_r2", c);
  // The 1/(pi alpha) normalisation differs by the constant r^2/alpha, so it
  // shares the verdict.
  const double printed = r * r / cfg.alpha;
  add_pair(arm_c, "norm_pi_alpha", {c.inner * printed, c.outer * printed});
  arm_c.note = "norm_pi_r2 divides the disc integral by pi r^2, norm_pi_alpha by pi alpha";
  rep.arms.push_back(std::move(arm_c));

  if (std::isinf(p)) {
    const double bound = supremum(phi);
    rep.config.emplace_back("bound_value", format_real(bound));
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      rep.checks.push_back({"lambda_max <= sup phi at " + n_name("", n_list[i]), tops[i], bound,
                            tops[i] <= bound * (1.0 + 1e-9)});
    }
  } else {
    const double bound = 2.0 * cfg.alpha / kPi * integrate_power(phi, p, quad.radius);
    rep.config.emplace_back("bound_value", format_real(bound));
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const double lhs = std::pow(norms[i], p);
      rep.checks.push_back({"||T_phi||_{S_p}^p <= (2 alpha/pi) int phi^p at " + n_name("", n_list[i]), lhs, bound,
                            lhs <= bound * (1.0 + 1e-9)});
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < norms.size(); ++i) monotone = monotone && norms[i] >= norms[i - 1] * (1.0 - 1e-10);
  rep.checks.push_back({"Schatten norm non-decreasing in N", norms.front(), norms.back(), monotone});
  rep.ratios.push_back({"a/b", safe_ratio(norms.back(), rep.arms[1].values.back().value)});
  rep.ratios.push_back({"a/c", safe_ratio(norms.back(), c.outer)});
  rep.ratios.push_back({"b/c", safe_ratio(rep.arms[1].values.back().value, c.outer)});
  finish(rep);
  return rep;
}

std::string to_json(const Report& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["kind"] = report.kind;
  doc["measure"] = report.measure;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  doc["config"] = cfg;
  ordered_json arms = ordered_json::array();
  for (const Arm& a : report.arms) {
    ordered_json j;
    j["id"] = a.id;
    j["quantity"] = a.quantity;
    ordered_json values = ordered_json::object();
    for (const auto& v : a.values) values[v.name] = json_number(v.value);
    j["values"] = values;
    j["threshold"] = a.threshold;
    j["verdict"] = to_string(a.verdict);
    if (!a.note.empty()) j["note"] = a.note;
    arms.push_back(j);
  }
  doc["arms"] = arms;
  ordered_json checks = ordered_json::array();
  for (const Check& c : report.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["lhs"] = json_number(c.lhs);
    j["rhs"] = json_number(c.rhs);
    j["holds"] = c.holds;
    checks.push_back(j);
  }
  doc["checks"] = checks;
  ordered_json ratios = ordered_json::object();
  for (const auto& r : report.ratios) ratios[r.name] = json_number(r.value);
  doc["ratios"] = ratios;
  doc["overall"] = to_string(report.overall);
  return doc.dump(2) + "\n";
}

void write_arm_csv(std::ostream& out, const Arm& arm) {
  out << "name,value\n";
  for (const auto& v : arm.values) out << v.name << ',' << format_real(v.value) << '\n';
}

}  // namespace hfock
