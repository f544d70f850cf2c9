#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsturm/model.hpp"

namespace qsturm {

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Band&) const = default;
};

/// Sorted, pairwise disjoint closed intervals.
struct BandList {
  std::vector<Band> bands;
  int level = -1;       ///< periodic-approximant level, -1 for sweeps
  bool merged = false;  ///< some neighbouring bands touched and were merged

  double total_measure() const;
  /// Distance from E to the union (0 inside).
  double distance(double E) const;
  bool contains(double E, double slack = 0.0) const { return distance(E) <= slack; }
};

/// Number of eigenvalues below E of the p x p periodic (corner = +1) or
/// antiperiodic (corner = -1) matrix with the given diagonal.
std::size_t floquet_count(std::span<const double> period, double corner, double E);

/**
 * Spectrum of the periodic operator with the given potential over one
 * period: the 2p band edges are the eigenvalues of the periodic and
 * antiperiodic period matrices, bracketed on a seed grid of 8p + 1 points
 * and bisected to `tol`. Bands closer than `tol` are merged.
 */
BandList periodic_bands(std::span<const double> period, double tol = 1e-10);

/// Bands of the |s'_n|-periodic operator with potential f(s'_n).
BandList periodic_bands(const ModelSpec& spec, int n, double tol = 1e-10);

struct EnergyGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t cells = 0;

  double width() const { return (hi - lo) / static_cast<double>(cells); }
  double cell_lo(std::size_t i) const { return lo + width() * static_cast<double>(i); }
  double cell_hi(std::size_t i) const { return i + 1 == cells ? hi : cell_lo(i + 1); }
  double center(std::size_t i) const { return lo + width() * (static_cast<double>(i) + 0.5); }
};

inline constexpr std::size_t kDefaultGridCells = 4000;
inline constexpr int kDefaultLevels = 30;

/// [min f - 2.5, max f + 2.5] split into `cells` cells.
EnergyGrid default_grid(const ModelSpec& spec, std::size_t cells = kDefaultGridCells);

struct StableSet {
  EnergyGrid grid;
  BandList bands;              ///< union of bounded cells
  std::vector<bool> bounded;   ///< per cell
  std::vector<double> sup_norm;  ///< per cell, empirical orbit bound
  double max_bounded_sup_norm() const;
};

/// Classifies every cell center; identical output for any thread count.
StableSet stable_set(const ModelSpec& spec, const EnergyGrid& grid, int n_levels = kDefaultLevels,
                     unsigned threads = 1);

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag`
/// and unit off-diagonal, ascending, each to 1e-10 by Sturm-count bisection.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag);

/// tridiagonal_eigenvalues of the first `size` potential values past `shift`.
std::vector<double> finite_eigenvalues(const ModelSpec& spec, std::size_t shift, std::size_t size);

struct MeasureRow {
  int level = 0;
  std::size_t band_count = 0;
  double total_measure = 0.0;
  bool merged = false;
};

std::vector<MeasureRow> measure_report(const ModelSpec& spec, int n_lo, int n_hi, double tol = 1e-10,
                                       unsigned threads = 1);

}  // namespace qsturm
