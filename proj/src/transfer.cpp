#include "qsturm/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsturm/error.hpp"

namespace qsturm {

double TransferMatrix::max_abs() const {
  return std::max({std::fabs(m11), std::fabs(m12), std::fabs(m21), std::fabs(m22)});
}

double TransferMatrix::norm() const {
  // sigma_max^2 = (F + sqrt(F^2 - 4 det^2)) / 2 with F the squared Frobenius norm
  const double f = frobenius_sq();
  const double d = det();
  const double disc = std::max(0.0, f * f - 4.0 * d * d);
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

TransferMatrix word_matrix(double E, std::span<const Symbol> w, std::span<const double> potential) {
  TransferMatrix m;
  for (Symbol s : w) {
    if (s >= potential.size()) {
      throw Error(ErrorKind::SymbolOutsideDomain, "symbol code " + std::to_string(s) + " has no potential");
    }
    m = local_matrix(E, potential[s]) * m;
  }
  return m;
}

TransferMatrix matrix_power(TransferMatrix m, std::size_t k) {
  TransferMatrix out;
  while (k > 0) {
    if (k & 1) out = out * m;
    m = m * m;
    k >>= 1;
  }
  return out;
}

LevelMatrices level_matrices(const ModelSpec& spec, double E, int n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  const LevelWords low = level_words_prime(spec, 1);
  LevelMatrices out;
  out.matrices.reserve(static_cast<std::size_t>(n_max) + 2);
  for (int n = -1; n <= 1; ++n) out.matrices.push_back(word_matrix(E, low.at(n), spec));
  for (int n = 2; n <= n_max; ++n) {
    const auto a = static_cast<std::size_t>(spec.cf.coeff(static_cast<std::size_t>(n)));
    out.matrices.push_back(out.at(n - 2) * matrix_power(out.at(n - 1), a));
  }
  return out;
}

TraceTriple initial_triple(const ModelSpec& spec, double E) {
  const LevelWords low = level_words_prime(spec, 1);
  const TransferMatrix m0 = word_matrix(E, low.at(0), spec);
  const TransferMatrix m1 = word_matrix(E, low.at(1), spec);
  return {0.5 * m0.trace(), 0.5 * m1.trace(), 0.5 * (m1 * m0).trace()};
}

double lyapunov_along(std::span<const double> V, double E) {
  if (V.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one potential value");
  TransferMatrix m;
  double log_scale = 0.0;
  for (std::size_t i = 0; i < V.size(); ++i) {
    m = local_matrix(E, V[i]) * m;
    if ((i + 1) % 64 == 0) {
      const double s = m.max_abs();
      m = m.scaled(1.0 / s);
      log_scale += std::log(s);
    }
  }
  return (log_scale + std::log(m.norm())) / static_cast<double>(V.size());
}

double lyapunov(const ModelSpec& spec, double E, std::size_t L, std::size_t shift) {
  const auto V = potential_values(spec, L, shift);
  return lyapunov_along(V, E);
}

SolutionSegment solve_along(std::span<const double> V, double E, double phi0, double phi1) {
  if (phi0 == 0.0 && phi1 == 0.0) {
    throw Error(ErrorKind::ZeroInitialCondition, "initial condition (0, 0) gives the zero solution");
  }
  SolutionSegment seg;
  seg.energy = E;
  seg.normalized = std::fabs(phi0 * phi0 + phi1 * phi1 - 1.0) <= 1e-12;
  seg.values.resize(V.size() + 2);
  seg.values[0] = phi0;
  seg.values[1] = phi1;
  for (std::size_t n = 1; n <= V.size(); ++n) {
    seg.values[n + 1] = (E - V[n - 1]) * seg.values[n] - seg.values[n - 1];
  }
  return seg;
}

SolutionSegment solve(const ModelSpec& spec, double E, std::size_t shift, double phi0, double phi1,
                      std::size_t L) {
  std::vector<double> V;
  if (L > 0) V = potential_values(spec, L, shift);
  SolutionSegment seg = solve_along(V, E, phi0, phi1);
  seg.shift = shift;
  return seg;
}

double local_norm(const SolutionSegment& seg, double L) {
  const double top = static_cast<double>(seg.values.size()) - 1.0;
  if (!(L >= 0.0) || L > top) {
    throw Error(ErrorKind::OutOfRange, "L must lie in [0, " + std::to_string(top) + "]");
  }
  const auto whole = static_cast<std::size_t>(std::floor(L));
  const double frac = L - static_cast<double>(whole);
  double sum = 0.0;
  for (std::size_t n = 0; n <= whole; ++n) sum += seg.values[n] * seg.values[n];
  if (frac > 0.0) sum += frac * seg.values[whole + 1] * seg.values[whole + 1];
  return std::sqrt(sum);
}

GordonReport gordon_residual(const ModelSpec& spec, double E, const Square& square, std::size_t shift) {
  const Word block = qs_prefix(spec, square.block_length, shift + square.site);
  const TransferMatrix m = word_matrix(E, block, spec);
  const double t = m.trace();
  const TransferMatrix m2 = m * m;
  const TransferMatrix r{m2.m11 - t * m.m11 + 1.0, m2.m12 - t * m.m12, m2.m21 - t * m.m21,
                         m2.m22 - t * m.m22 + 1.0};
  GordonReport out;
  out.residual = std::max(std::hypot(r.m11, r.m21), std::hypot(r.m12, r.m22));
  out.trace = t;
  out.norm_sq = m.norm() * m.norm();
  return out;
}

namespace {

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

GrowthExponents growth_exponents_along(std::span<const double> V, double E) {
  GrowthExponents out;
  const std::size_t L_max = V.size();
  for (std::size_t L = 16; L <= L_max; L *= 2) out.lengths.push_back(L);
  if (out.lengths.size() < 3) {
    throw Error(ErrorKind::DegenerateFit, "L_max " + std::to_string(L_max) + " gives fewer than 3 fit points");
  }
  std::vector<double> xs;
  for (std::size_t L : out.lengths) xs.push_back(std::log(static_cast<double>(L)));

  double max_log_norm = -INFINITY;
  for (std::size_t j = 0; j < kGrowthAngles; ++j) {
    const double t = std::numbers::pi * static_cast<double>(j) / static_cast<double>(kGrowthAngles);
    double prev = std::cos(t), cur = std::sin(t);
    double sum = prev * prev + cur * cur;  // n = 0, 1
    double log_scale = 0.0;
    std::vector<double> ys;
    std::size_t next = 0;
    // after the step at n, cur = phi(n + 1) and sum covers 0..n+1
    for (std::size_t n = 1; n < L_max && next < out.lengths.size(); ++n) {
      const double nxt = (E - V[n - 1]) * cur - prev;
      prev = cur;
      cur = nxt;
      sum += cur * cur;
      if (n + 1 == out.lengths[next]) {
        ys.push_back(0.5 * std::log(sum) + log_scale);
        ++next;
      }
      if (sum > 1e200) {
        const double s = 1e-100;
        prev *= s;
        cur *= s;
        sum *= s * s;
        log_scale -= std::log(s);
      }
    }
    max_log_norm = std::max(max_log_norm, ys.back());
    out.slopes.push_back(fit_slope(xs, ys));
  }
  out.gamma1 = *std::min_element(out.slopes.begin(), out.slopes.end());
  out.gamma2 = *std::max_element(out.slopes.begin(), out.slopes.end());
  out.exponential = max_log_norm > 0.05 * static_cast<double>(out.lengths.back());
  if (!(out.gamma2 > 0.0)) {
    throw Error(ErrorKind::DegenerateFit, "largest growth slope is not positive");
  }
  out.alpha = 2.0 * out.gamma1 / (out.gamma1 + out.gamma2);
  return out;
}

GrowthExponents growth_exponents(const ModelSpec& spec, double E, std::size_t shift, std::size_t L_max) {
  const auto V = potential_values(spec, L_max, shift);
  return growth_exponents_along(V, E);
}

}  // namespace qsturm
