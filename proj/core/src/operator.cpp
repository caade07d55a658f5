#include "hfock/operator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <limits>
#include <random>

#include "hfock/berezin.hpp"
#include "hfock/format.hpp"

namespace hfock {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::size_t kChunk = 2048;

void finish(TruncatedOperator& op) {
  if (!op.entries.allFinite()) throw NumericError("operator matrix has non-finite entries");
  const Eigen::MatrixXcd adj = op.entries.adjoint();
  op.asymmetry = (op.entries - adj).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, op.entries.cwiseAbs().maxCoeff());
  if (op.asymmetry > 1e-8 * scale) {
    throw NumericError("operator matrix is not Hermitian to integration accuracy (asymmetry " +
                       format_real(op.asymmetry) + ")");
  }
  op.entries = 0.5 * (op.entries + adj);
}

// Basis index for position k of the interleaved order 0, 1, -1, 2, -2, ...
int interleaved_index(int k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); }

double hermitian_form(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& v) {
  return (v.adjoint() * a * v)(0, 0).real();
}

// g(rho) = integral over z of |h_z(rho)|^2 e^{-alpha rho^2} dA(z).
double radial_profile(const FockConfig& cfg, double rho) {
  const double scale = 1.0 / std::sqrt(cfg.alpha);
  QuadratureSpec spec;
  spec.radius = rho + 7.0 * scale;
  spec.step = 0.1 * scale;
  spec.scheme = Scheme::Midpoint;
  const Complex u(rho, 0.0);
  return integrate_plane([&](Complex z) { return weighted_kernel_sq(cfg, z, u); }, spec);
}

}  // namespace

int default_cut(double alpha, double support_radius) {
  require(alpha > 0.0, "alpha must be positive");
  require(support_radius >= 0.0 && std::isfinite(support_radius), "support radius must be finite");
  const double r = support_radius;
  return static_cast<int>(std::ceil(alpha * r * r + 10.0 * std::sqrt(alpha) * r + 20.0));
}

TruncatedOperator assemble_points(const FockConfig& cfg, std::span<const WeightedPoint> points, int cut) {
  cfg.validate();
  require(cut >= 0, "truncation cut must be >= 0");
  TruncatedOperator op;
  op.config = cfg;
  op.cut = cut;
  const int dim = op.dimension();
  op.entries = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Complex> values(static_cast<std::size_t>(dim));
  RowMatrix v(static_cast<Eigen::Index>(std::min(kChunk, std::max<std::size_t>(points.size(), 1))), dim);
  std::size_t i = 0;
  while (i < points.size()) {
    Eigen::Index rows = 0;
    for (; i < points.size() && rows < v.rows(); ++i) {
      const WeightedPoint& p = points[i];
      require(p.weight >= 0.0 && std::isfinite(p.weight), "node weights must be finite and >= 0");
      if (p.weight == 0.0) continue;
      weighted_basis_values(cfg, cut, p.point, values);
      const double s = std::sqrt(p.weight);
      for (int n = 0; n < dim; ++n) v(rows, n) = s * values[static_cast<std::size_t>(n)];
      ++rows;
    }
    if (rows == 0) continue;
    // (V^* V)(m, n) = sum_k w_k conj(v_m) v_n
    const auto block = v.topRows(rows);
    op.entries.noalias() += block.adjoint() * block;
  }
  finish(op);
  return op;
}

TruncatedOperator assemble_nodes(const FockConfig& cfg, const MeasureNodes& nodes, int cut) {
  return assemble_points(cfg, nodes.nodes(), cut);
}

TruncatedOperator assemble(const FockConfig& cfg, const Measure& mu, int cut, const QuadratureSpec& quad) {
  return assemble_nodes(cfg, MeasureNodes(mu, quad), cut);
}

TruncatedOperator assemble_symbol(const FockConfig& cfg, const DensityProfile& phi, int cut,
                                  const QuadratureSpec& quad) {
  return assemble(cfg, symbol_measure(cfg, phi, quad), cut, quad);
}

SpectralData spectrum(const TruncatedOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.entries);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();
  SpectralData out;
  out.cut = op.cut;
  out.matrix_trace = op.trace();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
  const Eigen::MatrixXcd res = op.entries * vecs - vecs * ev.cast<Complex>().asDiagonal();
  out.max_residual = res.size() == 0 ? 0.0 : res.colwise().norm().maxCoeff();
  out.trace_residual = std::abs(ev.sum() - out.matrix_trace);
  return out;
}

double schatten_norm(const SpectralData& spec, double p) {
  require(p >= 1.0 || std::isinf(p), "Schatten exponent must be >= 1");
  if (spec.eigenvalues.empty()) return 0.0;
  const double top = spec.eigenvalues.front();
  const double tol = 1e-10 * std::max(1.0, std::abs(top));
  for (double l : spec.eigenvalues) {
    if (l < -tol) throw NumericError("operator has a significantly negative eigenvalue " + format_real(l));
  }
  if (std::isinf(p)) return std::max(top, 0.0);
  if (top <= 0.0) return 0.0;
  // Scale by the top eigenvalue so high powers neither overflow nor underflow.
  detail::CompensatedSum sum;
  for (double l : spec.eigenvalues) {
    if (l > 0.0) sum.add(std::pow(l / top, p));
  }
  return top * std::pow(sum.value(), 1.0 / p);
}

double berezin_plane_integral(const FockConfig& cfg, const Measure& mu, const QuadratureSpec& quad) {
  cfg.validate();
  const MeasureNodes nodes(mu, quad);
  if (nodes.exact()) {
    detail::CompensatedSum total;
    for (const auto& n : nodes.nodes()) total.add(n.weight * radial_profile(cfg, std::abs(n.point)));
    return total.value();
  }
  // Densities: tabulate g on a uniform radial grid and interpolate with
  // four-point Lagrange cubics.
  double rmax = 0.0;
  for (const auto& n : nodes.nodes()) rmax = std::max(rmax, std::abs(n.point));
  const double dr = 0.05 / std::sqrt(cfg.alpha);
  const int count = static_cast<int>(std::ceil(rmax / dr)) + 4;
  std::vector<double> table(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) table[static_cast<std::size_t>(k)] = radial_profile(cfg, k * dr);
  auto g = [&](double rho) {
    const double x = rho / dr;
    const int k0 = std::clamp(static_cast<int>(std::floor(x)) - 1, 0, count - 4);
    const double t = x - k0;
    const double* y = &table[static_cast<std::size_t>(k0)];
    return y[0] * (t - 1) * (t - 2) * (t - 3) / -6.0 + y[1] * t * (t - 2) * (t - 3) / 2.0 +
           y[2] * t * (t - 1) * (t - 3) / -2.0 + y[3] * t * (t - 1) * (t - 2) / 6.0;
  };
  detail::CompensatedSum total;
  for (const auto& n : nodes.nodes()) total.add(n.weight * g(std::abs(n.point)));
  return total.value();
}

TraceIdentity trace_identity_check(const FockConfig& cfg, const Measure& mu, int cut, const QuadratureSpec& quad) {
  const MeasureNodes nodes(mu, quad);
  const TruncatedOperator op = assemble_nodes(cfg, nodes, cut);
  TraceIdentity t{};
  t.matrix_trace = op.trace();
  t.kernel_integral =
      integrate_nodes(nodes, [&](Complex u) { return partial_kernel_diagonal_weighted(cfg, u, cut); });
  const MassResult mass = total_mass(mu);
  t.total_mass = mass.value;
  t.total_mass_truncated = mass.truncated;
  const double plane = berezin_plane_integral(cfg, mu, quad);
  t.eq41_value = 2.0 * cfg.alpha / kPi * plane;
  t.half_prefactor_value = cfg.alpha / kPi * plane;
  return t;
}

QuadraticForm quadratic_form(const TruncatedOperator& op, const Measure& mu, const HarmonicPolynomial& f,
                             const QuadratureSpec& quad) {
  const std::vector<Complex> c = f.to_basis(op.config, op.cut);
  const Eigen::Map<const Eigen::VectorXcd> v(c.data(), static_cast<Eigen::Index>(c.size()));
  const double a = op.config.alpha;
  QuadraticForm q{};
  q.matrix_form = hermitian_form(op.entries, v);
  q.integral_form =
      integrate_measure(mu, [&](Complex u) { return std::norm(f(u)) * std::exp(-a * std::norm(u)); }, quad);
  return q;
}

TruncatedOperator assemble_average(const FockConfig& cfg, const Measure& mu, double r, int cut,
                                   const QuadratureSpec& quad) {
  cfg.validate();
  require(r > 0.0 && std::isfinite(r), "averaging radius r must be positive");
  const double gauss = cfg.alpha / kPi;
  const double disc = kPi * r * r;
  std::vector<WeightedPoint> points;
  if (const auto* atoms = mu.as_atomic()) {
    // mu^_r = sum_j w_j 1_{B(u_j, r)} / (pi r^2): one polar rule per atom,
    // fine enough for the degree-2*cut integrand.
    const PolarRule rule{cut + 16, 4 * cut + 64};
    for (const Atom& a : atoms->atoms) {
      for (WeightedPoint p : disc_nodes(a.location, r, rule)) {
        p.weight *= a.weight * gauss / disc;
        points.push_back(p);
      }
    }
  } else {
    const double reach = std::min(quad.radius, mu.extent() + r);
    const AxisRule ax = axis_rule(quad, -reach, reach);
    const PolarRule coarse{16, 128};
    for (std::size_t j = 0; j < ax.x.size(); ++j) {
      for (std::size_t i = 0; i < ax.x.size(); ++i) {
        const Complex z(ax.x[i], ax.x[j]);
        if (std::abs(z) >= mu.extent() + r) continue;
        const double avg = ball_mass(mu, z, r, coarse) / disc;
        if (avg > 0.0) points.push_back({z, ax.w[i] * ax.w[j] * gauss * avg});
      }
    }
  }
  return assemble_points(cfg, points, cut);
}

Domination domination_check(const FockConfig& cfg, const Measure& mu, double r, int cut,
                            const QuadratureSpec& quad, int trials, std::uint64_t seed) {
  require(trials >= 1, "domination check needs at least one trial");
  const TruncatedOperator t = assemble(cfg, mu, cut, quad);
  const TruncatedOperator avg = assemble_average(cfg, mu, r, cut, quad);
  const int dim = t.dimension();
  Domination d{0.0, 0, 0};
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
    for (int k = 0; k < dim; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(TruncatedOperator::row_of(interleaved_index(k), cut)) = Complex(re, im);
    }
    const double num = hermitian_form(t.entries, v);
    const double den = hermitian_form(avg.entries, v);
    if (std::abs(num) < 1e-14 && std::abs(den) < 1e-14) {
      ++d.samples_skipped;
      continue;
    }
    ++d.samples_used;
    const double ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    d.ratio = std::max(d.ratio, ratio);
  }
  return d;
}

void write_matrix_csv(std::ostream& out, const TruncatedOperator& op) {
  const int dim = op.dimension();
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const Complex a = op.entries(m, n);
      if (n > 0) out << ',';
      out << format_real(a.real()) << ',' << format_real(a.imag());
    }
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const SpectralData& spec) {
  out << "index,eigenvalue\n";
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    out << k << ',' << format_real(spec.eigenvalues[k]) << '\n';
  }
}

}  // namespace hfock
