#include "qsturm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsturm/error.hpp"
#include "qsturm/parallel.hpp"
#include "qsturm/tracemap.hpp"
#include "qsturm/words.hpp"

namespace qsturm {

double BandList::total_measure() const {
  double sum = 0.0;
  for (const Band& b : bands) sum += b.hi - b.lo;
  return sum;
}

double BandList::distance(double E) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Band& b : bands) {
    if (E >= b.lo && E <= b.hi) return 0.0;
    best = std::min(best, E < b.lo ? b.lo - E : E - b.hi);
  }
  return best;
}

namespace {

// Zero pivots are nudged off zero; the count is then that of a matrix
// perturbed by far less than any tolerance used here.
constexpr long double kTinyPivot = 1e-300L;

long double nudge(long double d) { return d == 0.0L ? -kTinyPivot : d; }

}  // namespace

std::size_t floquet_count(std::span<const double> period, double corner, double E) {
  const std::size_t p = period.size();
  if (p == 0) throw Error(ErrorKind::InvalidArgument, "empty period");
  if (p == 1) return period[0] + 2.0 * corner < E ? 1 : 0;
  if (p == 2) {
    const long double off = 1.0L + corner;
    const long double d0 = nudge(static_cast<long double>(period[0]) - E);
    const long double d1 = static_cast<long double>(period[1]) - E - off * off / d0;
    return (d0 < 0) + (d1 < 0);
  }
  // LDL^T of the cyclic tridiagonal H - E: d_i are the pivots of rows
  // 0..p-2, g_i the entry that row i carries into the last column.
  std::size_t negatives = 0;
  long double d = nudge(static_cast<long double>(period[0]) - E);
  long double g = corner;
  long double last = static_cast<long double>(period[p - 1]) - E;
  negatives += d < 0;
  last -= g * g / d;
  for (std::size_t i = 1; i + 1 < p; ++i) {
    const long double d_new = nudge(static_cast<long double>(period[i]) - E - 1.0L / d);
    const long double g_new = (i + 2 == p ? 1.0L : 0.0L) - g / d;
    d = d_new;
    g = g_new;
    negatives += d < 0;
    last -= g * g / d;
  }
  negatives += last < 0;
  return negatives;
}

namespace {

// Eigenvalues of the periodic/antiperiodic matrix, ascending.
std::vector<double> floquet_edges(std::span<const double> period, double corner, double tol) {
  const std::size_t p = period.size();
  const auto [vmin, vmax] = std::minmax_element(period.begin(), period.end());
  const double lo = *vmin - 2.5, hi = *vmax + 2.5;
  const std::size_t points = 8 * p + 1;
  std::vector<double> grid(points);
  std::vector<std::size_t> counts(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    counts[i] = floquet_count(period, corner, grid[i]);
  }
  if (counts.front() != 0 || counts.back() != p) {
    throw Error(ErrorKind::GridTooCoarse, "seed grid does not enclose all " + std::to_string(p) + " band edges");
  }
  std::vector<double> edges(p);
  std::size_t g = 0;
  for (std::size_t k = 0; k < p; ++k) {
    while (counts[g] <= k) ++g;
    double a = grid[g - 1], b = grid[g];
    for (int iter = 0; b - a > tol && iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (floquet_count(period, corner, mid) > k ? b : a) = mid;
    }
    edges[k] = 0.5 * (a + b);
  }
  return edges;
}

}  // namespace

BandList periodic_bands(std::span<const double> period, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const std::size_t p = period.size();
  if (p == 0) throw Error(ErrorKind::InvalidArgument, "empty period");
  if (p == 1) return BandList{{{period[0] - 2.0, period[0] + 2.0}}};
  std::vector<double> edges = floquet_edges(period, 1.0, tol);
  const std::vector<double> anti = floquet_edges(period, -1.0, tol);
  edges.insert(edges.end(), anti.begin(), anti.end());
  std::sort(edges.begin(), edges.end());

  BandList out;
  for (std::size_t i = 0; i < p; ++i) {
    const Band b{edges[2 * i], edges[2 * i + 1]};
    if (!out.bands.empty() && b.lo - out.bands.back().hi <= tol) {
      out.bands.back().hi = std::max(out.bands.back().hi, b.hi);
      out.merged = true;
    } else {
      out.bands.push_back(b);
    }
  }
  return out;
}

BandList periodic_bands(const ModelSpec& spec, int n, double tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be at least 1");
  const LevelWords primed = level_words_prime(spec, n);
  const Word& w = primed.at(n);
  std::vector<double> values(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) values[i] = spec.potential_of(w[i]);
  BandList out = periodic_bands(values, tol);
  out.level = n;
  return out;
}

EnergyGrid default_grid(const ModelSpec& spec, std::size_t cells) {
  return {spec.min_potential() - 2.5, spec.max_potential() + 2.5, cells};
}

double StableSet::max_bounded_sup_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    if (bounded[i]) best = std::max(best, sup_norm[i]);
  }
  return best;
}

StableSet stable_set(const ModelSpec& spec, const EnergyGrid& grid, int n_levels, unsigned threads) {
  if (grid.cells == 0 || !(grid.hi > grid.lo)) {
    throw Error(ErrorKind::InvalidArgument, "energy grid needs a positive width and at least one cell");
  }
  StableSet out;
  out.grid = grid;
  std::vector<char> bounded(grid.cells, 0);
  out.sup_norm.assign(grid.cells, 0.0);
  parallel_for(grid.cells, threads, [&](std::size_t i) {
    const OrbitVerdict v = classify_orbit(spec, grid.center(i), n_levels);
    bounded[i] = v.kind == OrbitKind::Bounded;
    out.sup_norm[i] = v.sup_norm;
  });
  out.bounded.assign(bounded.begin(), bounded.end());
  for (std::size_t i = 0; i < grid.cells; ++i) {
    if (!out.bounded[i]) continue;
    if (i > 0 && out.bounded[i - 1]) {
      out.bands.bands.back().hi = grid.cell_hi(i);
    } else {
      out.bands.bands.push_back({grid.cell_lo(i), grid.cell_hi(i)});
    }
  }
  return out;
}

namespace {

std::size_t sturm_count(std::span<const double> diag, double E) {
  std::size_t negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - E - (i == 0 ? 0.0 : 1.0 / q);
    if (q == 0.0) q = -1e-300;
    negatives += q < 0;
  }
  return negatives;
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag) {
  if (diag.empty()) return {};
  const auto [dmin, dmax] = std::minmax_element(diag.begin(), diag.end());
  const double lo = *dmin - 2.0 - 1e-9, hi = *dmax + 2.0 + 1e-9;
  std::vector<double> out(diag.size());
  double floor = lo;  // eigenvalues ascend, so each search starts above the previous one
  for (std::size_t k = 0; k < diag.size(); ++k) {
    double a = floor, b = hi;
    while (b - a > 1e-10) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (sturm_count(diag, mid) > k ? b : a) = mid;
    }
    out[k] = 0.5 * (a + b);
    floor = a;
  }
  return out;
}

std::vector<double> finite_eigenvalues(const ModelSpec& spec, std::size_t shift, std::size_t size) {
  if (size < 2) throw Error(ErrorKind::InvalidArgument, "matrix size must be at least 2");
  const auto V = potential_values(spec, size, shift);
  return tridiagonal_eigenvalues(V);
}

std::vector<MeasureRow> measure_report(const ModelSpec& spec, int n_lo, int n_hi, double tol, unsigned threads) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::InvalidArgument, "need 1 <= n_lo <= n_hi");
  std::vector<MeasureRow> rows(static_cast<std::size_t>(n_hi - n_lo + 1));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const int n = n_lo + static_cast<int>(i);
    const BandList b = periodic_bands(spec, n, tol);
    rows[i] = {n, b.bands.size(), b.total_measure(), b.merged};
  });
  return rows;
}

}  // namespace qsturm
