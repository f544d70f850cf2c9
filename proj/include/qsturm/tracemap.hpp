#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qsturm/contfrac.hpp"
#include "qsturm/model.hpp"
#include "qsturm/trace_triple.hpp"

namespace qsturm {

/// Chebyshev polynomial of the second kind: U_{-1} = 0, U_0 = 1,
/// U_{m+1}(x) = 2x U_m(x) - U_{m-1}(x).
double chebyshev(int m, double x);

/// F(x, y, z) = (y, z U_{a-1}(y) - x U_{a-2}(y), z U_a(y) - x U_{a-1}(y)).
TraceTriple step(std::int64_t a_next, const TraceTriple& t);

enum class Generator { P, U, V, Q, QInv };

/// Parses "p", "u", "v", "q", "q_inv".
Generator parse_generator(std::string_view name);
TraceTriple apply(Generator g, const TraceTriple& t);

/// x^2 + y^2 + z^2 - 2xyz - 1.
double invariant(const TraceTriple& t);

/// |y| > 1, |z| > 1 and |yz| > |x|, compared without tolerance.
bool in_escape(const TraceTriple& t);

inline constexpr double kOverflowThreshold = 1e150;

/**
 * Orbit of a triple refined into elementary blocks: within level n the
 * states are u^j t_n for j = 0..a_{n+1}-1, and the next level starts at
 * t_{n+1} = p u^{a_{n+1}} t_n = F_n(t_n). The escape set is forward
 * invariant under every block.
 */
class ElementaryOrbit {
 public:
  ElementaryOrbit(ContinuedFraction cf, TraceTriple start, int level = 1);

  const TraceTriple& state() const noexcept { return state_; }
  int level() const noexcept { return level_; }
  /// True when the state is a level triple t_n rather than an intermediate u^j t_n.
  bool at_level_start() const noexcept { return j_ == 0; }
  std::size_t blocks() const noexcept { return blocks_; }

  void advance();

 private:
  ContinuedFraction cf_;
  TraceTriple state_;
  int level_;
  std::int64_t j_ = 0;
  std::int64_t a_ = 0;
  std::size_t blocks_ = 0;
};

enum class OrbitKind { Bounded, Escaped };

struct OrbitVerdict {
  OrbitKind kind = OrbitKind::Bounded;
  std::size_t steps_checked = 0;          ///< elementary-block states tested
  std::optional<std::size_t> escape_step; ///< block index of the first escaping state
  double sup_norm = 0.0;                  ///< max Euclidean norm over tested states
  double invariant = 0.0;                 ///< of the initial triple
  bool overflow = false;                  ///< a coordinate passed kOverflowThreshold before formal escape
};

/// Classifies an orbit from an arbitrary starting triple over levels
/// `first_level`..`last_level` (the triple is the level-`first_level` one).
OrbitVerdict classify_triple(const ContinuedFraction& cf, const TraceTriple& start, int first_level,
                             int last_level);

/// Orbit of initial_triple(spec, E) over levels 1..n_levels.
OrbitVerdict classify_orbit(const ModelSpec& spec, double E, int n_levels);

/// Level triples t_1..t_{n_levels}; stops early once a coordinate overflows.
std::vector<TraceTriple> orbit_trace(const ModelSpec& spec, double E, int n_levels);

}  // namespace qsturm
