#include "qsturm/contfrac.hpp"

#include <cmath>
#include <string>

#include "qsturm/error.hpp"

namespace qsturm {

namespace {

constexpr double kRationalCutoff = 1e-12;

void check_positive(const std::vector<std::int64_t>& v, const char* what) {
  for (auto a : v) {
    if (a < 1) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " coefficient " + std::to_string(a) + " is not >= 1");
    }
  }
}

std::int64_t checked_step(std::int64_t a, std::int64_t prev, std::int64_t prev2, std::size_t n) {
  std::int64_t prod = 0;
  std::int64_t sum = 0;
  if (__builtin_mul_overflow(a, prev, &prod) || __builtin_add_overflow(prod, prev2, &sum)) {
    throw Error(ErrorKind::IntegerOverflow,
                "approximant at index " + std::to_string(n) + " exceeds 64-bit range");
  }
  return sum;
}

}  // namespace

ContinuedFraction::ContinuedFraction(std::vector<std::int64_t> coeffs,
                                     std::vector<std::int64_t> periodic)
    : coeffs_(std::move(coeffs)), periodic_(std::move(periodic)) {
  check_positive(coeffs_, "continued fraction");
  check_positive(periodic_, "periodic block");
}

std::int64_t ContinuedFraction::coeff(std::size_t i) const {
  if (i == 0) {
    throw Error(ErrorKind::InvalidArgument, "coefficients are indexed from 1");
  }
  if (i <= coeffs_.size()) return coeffs_[i - 1];
  if (periodic_.empty()) {
    throw Error(ErrorKind::IndexBeyondCoefficients,
                "coefficient a_" + std::to_string(i) + " requested but only " +
                    std::to_string(coeffs_.size()) + " available");
  }
  return periodic_[(i - coeffs_.size() - 1) % periodic_.size()];
}

std::optional<std::size_t> ContinuedFraction::available() const {
  if (!periodic_.empty()) return std::nullopt;
  return coeffs_.size();
}

std::vector<Approximant> approximant_table(const ContinuedFraction& cf, std::size_t n) {
  std::vector<Approximant> out;
  out.reserve(n + 1);
  out.push_back({0, 1});
  if (n == 0) return out;
  out.push_back({1, cf.coeff(1)});
  for (std::size_t k = 2; k <= n; ++k) {
    const auto a = cf.coeff(k);
    out.push_back({checked_step(a, out[k - 1].p, out[k - 2].p, k),
                   checked_step(a, out[k - 1].q, out[k - 2].q, k)});
  }
  return out;
}

Approximant approximants(const ContinuedFraction& cf, std::size_t n) {
  if (n == 0) return {0, 1};
  Approximant prev2{0, 1};
  Approximant prev{1, cf.coeff(1)};
  for (std::size_t k = 2; k <= n; ++k) {
    const auto a = cf.coeff(k);
    Approximant next{checked_step(a, prev.p, prev2.p, k), checked_step(a, prev.q, prev2.q, k)};
    prev2 = prev;
    prev = next;
  }
  return prev;
}

double value(const ContinuedFraction& cf, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "value needs n >= 1");
  if (!cf.has(n)) {
    throw Error(ErrorKind::IndexBeyondCoefficients,
                "value at index " + std::to_string(n) + " beyond available coefficients");
  }
  double x = 0.0;
  for (std::size_t k = n; k >= 1; --k) x = 1.0 / (static_cast<double>(cf.coeff(k)) + x);
  return x;
}

Expansion expand(double theta, std::size_t n) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "expand needs 0 < theta < 1");
  }
  std::vector<std::int64_t> coeffs;
  double x = theta;
  bool terminated = false;
  while (coeffs.size() < n) {
    const double y = 1.0 / x;
    double a = std::floor(y);
    double frac = y - a;
    // y just below an integer is that integer up to rounding
    if (1.0 - frac < kRationalCutoff) {
      a += 1.0;
      frac = 0.0;
    }
    if (a > 9.0e18) {
      terminated = true;
      break;
    }
    coeffs.push_back(static_cast<std::int64_t>(a));
    if (frac < kRationalCutoff) {
      terminated = coeffs.size() < n;
      break;
    }
    x = frac;
  }
  return {ContinuedFraction(std::move(coeffs)), terminated};
}

double density_score(const ContinuedFraction& cf, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "density_score needs n >= 1");
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) sum += static_cast<double>(cf.coeff(i));
  return sum / static_cast<double>(n);
}

}  // namespace qsturm
