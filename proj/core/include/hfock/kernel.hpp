#pragma once

#include <span>
#include <vector>

#include "hfock/types.hpp"

namespace hfock {

/// PaperSum: H_z = K_z + conj(K_z). BasisSum: H_z = K_z + conj(K_z) - 1,
/// the sum over the orthonormal basis, which reproduces constants once.
enum class Convention { PaperSum, BasisSum };

struct FockConfig {
  double alpha = 1.0;
  Convention convention = Convention::BasisSum;

  void validate() const;
};

const char* to_string(Convention c);

/// K_z(w) = exp(alpha * conj(z) * w)
Complex analytic_kernel(const FockConfig& cfg, Complex z, Complex w);

Complex harmonic_kernel(const FockConfig& cfg, Complex z, Complex w);

/// H_z(z): 2 e^{alpha |z|^2}, minus one under BasisSum.
double harmonic_kernel_diagonal(const FockConfig& cfg, Complex z);

/// h_z(w) = H_z(w) / sqrt(H_z(z))
Complex normalized_kernel(const FockConfig& cfg, Complex z, Complex w);

/// |h_z(u)|^2 e^{-alpha |u|^2}, evaluated through the reduced exponent
/// e^{-alpha |u - z|^2} so it stays finite for large |z| and |u|.
double weighted_kernel_sq(const FockConfig& cfg, Complex z, Complex u);

/// Closed form of ||h_z||^2 in F_h^2: 1 (BasisSum), 1 + e^{-alpha|z|^2} (PaperSum).
double normalized_kernel_norm_sq(const FockConfig& cfg, Complex z);

/// e_n(z): sqrt(alpha^n / n!) z^n for n >= 0, sqrt(alpha^|n| / |n|!) conj(z)^|n| otherwise.
Complex basis_function(const FockConfig& cfg, int n, Complex z);

/// e_n(z) e^{-alpha|z|^2/2} for n = -cut..cut, written to out[n + cut].
void weighted_basis_values(const FockConfig& cfg, int cut, Complex z, std::span<Complex> out);

/// sum_{|n| <= cut} conj(e_n(z)) e_n(w)
Complex kernel_partial_sum(const FockConfig& cfg, Complex z, Complex w, int cut);

/// sum_{|n| <= cut} |e_n(u)|^2 e^{-alpha|u|^2}, term by term in log space.
double partial_kernel_diagonal_weighted(const FockConfig& cfg, Complex u, int cut);

/// f = f1 + conj(f2) with f1, f2 polynomials; the constant term lives in f1.
struct HarmonicPolynomial {
  std::vector<Complex> analytic;    // coefficients of f1, ascending powers
  std::vector<Complex> conjugate;   // coefficients of f2; conjugate[0] is kept zero

  HarmonicPolynomial() = default;
  HarmonicPolynomial(std::vector<Complex> f1, std::vector<Complex> f2);

  Complex operator()(Complex z) const;
  int degree() const;

  /// f = sum_n coeffs[n + cut] e_n.
  static HarmonicPolynomial from_basis(const FockConfig& cfg, std::span<const Complex> coeffs, int cut);
  /// Coefficients against e_n, n = -cut..cut; throws if degree() > cut.
  std::vector<Complex> to_basis(const FockConfig& cfg, int cut) const;
};

/// pα / (2π (1 − e^{−pαr²/2})): reciprocal of the Gaussian disc mass
/// that bounds |f(a)|^p e^{-pα|a|²/2} by the disc integral.
double pointwise_estimate_constant(double p, double alpha, double r);

struct PointwiseEstimate {
  double lhs;
  double rhs;
  bool holds;
};

/// Compares |f(a) e^{-α|a|²/2}|^p against C(p,α,r) ∫_{B(a,r)} |f e^{-α|·|²/2}|^p dA.
PointwiseEstimate pointwise_estimate_check(const FockConfig& cfg, const HarmonicPolynomial& f,
                                           Complex a, double p, double r);

}  // namespace hfock
