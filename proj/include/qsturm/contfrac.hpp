#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qsturm {

/**
 * Continued fraction [0; a_1, a_2, ...] of a number in (0,1).
 *
 * Coefficients are stored explicitly; an optional periodic block extends
 * them indefinitely (a_{N+1}, a_{N+2}, ... cycle through the block). The
 * object is immutable after construction.
 */
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::int64_t> coeffs,
                             std::vector<std::int64_t> periodic = {});

  static ContinuedFraction periodic(std::vector<std::int64_t> block) {
    return ContinuedFraction({}, std::move(block));
  }

  /// a_i for 1-based i. Throws IndexBeyondCoefficients past the end of a
  /// finite expansion.
  std::int64_t coeff(std::size_t i) const;

  bool has(std::size_t i) const { return i >= 1 && (!periodic_.empty() || i <= coeffs_.size()); }

  /// Number of available coefficients, or nullopt when a periodic tail
  /// makes the expansion infinite.
  std::optional<std::size_t> available() const;

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  const std::vector<std::int64_t>& periodic_block() const { return periodic_; }

  bool operator==(const ContinuedFraction&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
  std::vector<std::int64_t> periodic_;
};

struct Approximant {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// p_n/q_n with p_0 = 0, p_1 = 1, q_0 = 1, q_1 = a_1. Overflow of either
/// integer raises IntegerOverflow.
Approximant approximants(const ContinuedFraction& cf, std::size_t n);

/// All approximants for indices 0..n.
std::vector<Approximant> approximant_table(const ContinuedFraction& cf, std::size_t n);

/// p_n/q_n as a double (n >= 1). Evaluated from the tail inwards, so it does
/// not overflow even where the integer approximants would.
double value(const ContinuedFraction& cf, std::size_t n);

struct Expansion {
  ContinuedFraction cf;
  bool terminated = false;  ///< theta looked rational: fewer than n coefficients
};

/// First n coefficients of theta in (0,1) via the Gauss map. Stops early
/// and flags `terminated` once the remainder drops below 1e-12.
Expansion expand(double theta, std::size_t n);

/// Cesaro mean (1/n) * sum_{i<=n} a_i.
double density_score(const ContinuedFraction& cf, std::size_t n);

}  // namespace qsturm
