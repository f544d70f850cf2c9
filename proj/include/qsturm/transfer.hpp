#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsturm/model.hpp"
#include "qsturm/trace_triple.hpp"
#include "qsturm/word.hpp"
#include "qsturm/words.hpp"

namespace qsturm {

/// Real 2x2 matrix [[m11, m12], [m21, m22]].
struct TransferMatrix {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  static TransferMatrix identity() { return {}; }
  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }
  double max_abs() const;
  /// Largest singular value.
  double norm() const;
  /// Sum of squared entries.
  double frobenius_sq() const { return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22; }
  TransferMatrix scaled(double s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
};

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);

/// [[E - v, -1], [1, 0]].
inline TransferMatrix local_matrix(double E, double v) { return {E - v, -1.0, 1.0, 0.0}; }

/// Product of local matrices over w with the first symbol rightmost.
/// `potential[s]` is the energy of symbol code s.
TransferMatrix word_matrix(double E, std::span<const Symbol> w, std::span<const double> potential);
inline TransferMatrix word_matrix(double E, const Word& w, const ModelSpec& spec) {
  return word_matrix(E, w.span(), spec.potential);
}

/// M^k by repeated squaring.
TransferMatrix matrix_power(TransferMatrix m, std::size_t k);

struct LevelMatrices {
  std::vector<TransferMatrix> matrices;  ///< M(-1), M(0), ..., M(n_max)

  const TransferMatrix& at(int n) const { return matrices.at(static_cast<std::size_t>(n + 1)); }
};

/// M(-1), M(0), M(1) from s'_{-1}, s'_0, s'_1; M(n) = M(n-2) M(n-1)^{a_n} above.
LevelMatrices level_matrices(const ModelSpec& spec, double E, int n_max);

/// (tr M(0), tr M(1), tr M(1)M(0)) / 2.
TraceTriple initial_triple(const ModelSpec& spec, double E);

/**
 * (1/L) ln ||M(V(L)) ... M(V(1))|| over the given potential values, with the
 * running product renormalized every 64 steps.
 */
double lyapunov_along(std::span<const double> V, double E);

/// lyapunov_along over the first L potential values of the model past `shift`.
double lyapunov(const ModelSpec& spec, double E, std::size_t L, std::size_t shift = 0);

/// phi(0..L+1) of phi(n+1) + phi(n-1) + V(n) phi(n) = E phi(n), V(n) = f(u(shift + n - 1)).
struct SolutionSegment {
  std::vector<double> values;
  double energy = 0.0;
  std::size_t shift = 0;
  bool normalized = false;  ///< |phi(0)|^2 + |phi(1)|^2 = 1
};

SolutionSegment solve(const ModelSpec& spec, double E, std::size_t shift, double phi0, double phi1,
                      std::size_t L);
/// Same recursion over explicit potential values V(1..L) = V[0..L-1].
SolutionSegment solve_along(std::span<const double> V, double E, double phi0, double phi1);

/// sqrt(sum_{n <= floor L} |phi(n)|^2 + (L - floor L) |phi(floor L + 1)|^2).
double local_norm(const SolutionSegment& seg, double L);

struct GordonReport {
  double residual = 0.0;  ///< max_e ||(M^2 - tr(M) M + Id) e|| over the unit vectors
  double trace = 0.0;
  double norm_sq = 0.0;   ///< ||M||^2
};

/// Cayley-Hamilton check for the transfer matrix of the square's block.
GordonReport gordon_residual(const ModelSpec& spec, double E, const Square& square, std::size_t shift);

struct GrowthExponents {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double alpha = 0.0;
  bool exponential = false;     ///< some solution grew exponentially; power-law fit is meaningless
  std::vector<double> slopes;   ///< per initial-condition angle
  std::vector<std::size_t> lengths;  ///< dyadic L grid used by the fit
};

inline constexpr std::size_t kGrowthAngles = 32;

/**
 * Power-law exponents of ||phi||_L over the dyadic grid L = 16, 32, ...,
 * <= L_max for phi(0) = cos t, phi(1) = sin t, t = pi j / 32. gamma1 and
 * gamma2 are the smallest and largest least-squares slopes of ln ||phi||_L
 * against ln L, alpha = 2 gamma1 / (gamma1 + gamma2).
 */
GrowthExponents growth_exponents(const ModelSpec& spec, double E, std::size_t shift, std::size_t L_max);
GrowthExponents growth_exponents_along(std::span<const double> V, double E);

}  // namespace qsturm
