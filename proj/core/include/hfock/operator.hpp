#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hfock/integrate.hpp"
#include "hfock/kernel.hpp"
#include "hfock/measure.hpp"
#include "hfock/quadrature.hpp"

namespace hfock {

/// Compression of T_mu to span{e_n : |n| <= cut}. Row/column i holds
/// basis index n = i - cut; entries(m, n) = <T_mu e_n, e_m>.
struct TruncatedOperator {
  FockConfig config;
  int cut = 0;
  Eigen::MatrixXcd entries;
  /// max |A - A^*| before symmetrisation.
  double asymmetry = 0.0;

  int dimension() const { return 2 * cut + 1; }
  static int row_of(int n, int cut) { return n + cut; }
  double trace() const { return entries.diagonal().real().sum(); }
};

/// Cut large enough that e^{-alpha|u|^2}|e_cut(u)|^2 is negligible on the
/// support: alpha R^2 + 10 sqrt(alpha) R + 20.
int default_cut(double alpha, double support_radius);

/// Entries from weighted points: sum_k w_k e_n(u_k) conj(e_m(u_k)) e^{-alpha|u_k|^2}.
TruncatedOperator assemble_points(const FockConfig& cfg, std::span<const WeightedPoint> points, int cut);
TruncatedOperator assemble_nodes(const FockConfig& cfg, const MeasureNodes& nodes, int cut);

TruncatedOperator assemble(const FockConfig& cfg, const Measure& mu, int cut, const QuadratureSpec& quad);

/// T_phi, i.e. T_mu with d mu = (alpha/pi) phi dA.
TruncatedOperator assemble_symbol(const FockConfig& cfg, const DensityProfile& phi, int cut,
                                  const QuadratureSpec& quad);

struct SpectralData {
  std::vector<double> eigenvalues;  // descending
  int cut = 0;
  double matrix_trace = 0.0;
  /// |sum(eigenvalues) - trace|
  double trace_residual = 0.0;
  /// max_k ||A v_k - lambda_k v_k||
  double max_residual = 0.0;
};

SpectralData spectrum(const TruncatedOperator& op);

/// (sum lambda^p)^(1/p), or lambda_max for p = infinity. Eigenvalues in
/// (-1e-10 * scale, 0) are clamped to zero; anything more negative throws.
double schatten_norm(const SpectralData& spec, double p);

struct TraceIdentity {
  double matrix_trace;
  /// integral of sum_{|n|<=cut} |e_n|^2 e^{-alpha|u|^2} d mu(u)
  double kernel_integral;
  double total_mass;
  bool total_mass_truncated;
  /// (2 alpha / pi) * integral of mu~ dA
  double eq41_value;
  /// (alpha / pi) * integral of mu~ dA
  double half_prefactor_value;
};

TraceIdentity trace_identity_check(const FockConfig& cfg, const Measure& mu, int cut, const QuadratureSpec& quad);

/// Integral of mu~ over the plane, computed as the integral over mu of the
/// radial profile g(|u|) = integral of |h_z(u)|^2 e^{-alpha|u|^2} dA(z).
double berezin_plane_integral(const FockConfig& cfg, const Measure& mu, const QuadratureSpec& quad);

struct QuadraticForm {
  double matrix_form;
  double integral_form;
};

/// <T_mu f, f> as v^* A v and as the integral of |f|^2 e^{-alpha|u|^2} d mu.
QuadraticForm quadratic_form(const TruncatedOperator& op, const Measure& mu, const HarmonicPolynomial& f,
                             const QuadratureSpec& quad);

struct Domination {
  double ratio;
  int samples_used;
  int samples_skipped;
};

/// Empirical constant in T_mu <= C T_{mu^_r}: max over seeded random test
/// vectors of <T_mu v, v> / <T_{mu^_r} v, v>. Test vectors are prefix
/// consistent in the basis order 0, 1, -1, 2, -2, ... so results at
/// different cuts share their low-index components.
Domination domination_check(const FockConfig& cfg, const Measure& mu, double r, int cut,
                            const QuadratureSpec& quad, int trials = 200, std::uint64_t seed = 20240517);

/// The operator with symbol mu^_r: entries of integral e_n conj(e_m) mu^_r d lambda_alpha.
TruncatedOperator assemble_average(const FockConfig& cfg, const Measure& mu, double r, int cut,
                                   const QuadratureSpec& quad);

/// One matrix row per line: re,im pairs for each column.
void write_matrix_csv(std::ostream& out, const TruncatedOperator& op);
/// Header `index,eigenvalue`, eigenvalues descending.
void write_spectrum_csv(std::ostream& out, const SpectralData& spec);

}  // namespace hfock
