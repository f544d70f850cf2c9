#include "qsturm/tracemap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsturm/error.hpp"
#include "qsturm/transfer.hpp"

namespace qsturm {

double chebyshev(int m, double x) {
  if (m < -1) throw Error(ErrorKind::InvalidArgument, "Chebyshev index must be >= -1");
  if (m == -1) return 0.0;
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < m; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

TraceTriple step(std::int64_t a_next, const TraceTriple& t) {
  if (a_next < 1) throw Error(ErrorKind::InvalidArgument, "coefficient must be >= 1");
  const int a = static_cast<int>(a_next);
  const double ua2 = chebyshev(a - 2, t.y);
  const double ua1 = chebyshev(a - 1, t.y);
  const double ua = 2.0 * t.y * ua1 - ua2;
  return {t.y, t.z * ua1 - t.x * ua2, t.z * ua - t.x * ua1};
}

Generator parse_generator(std::string_view name) {
  if (name == "p") return Generator::P;
  if (name == "u") return Generator::U;
  if (name == "v") return Generator::V;
  if (name == "q") return Generator::Q;
  if (name == "q_inv") return Generator::QInv;
  throw Error(ErrorKind::InvalidArgument, "unknown generator '" + std::string(name) + "'");
}

TraceTriple apply(Generator g, const TraceTriple& t) {
  switch (g) {
    case Generator::P: return {t.y, t.x, t.z};
    case Generator::U: return {t.z, t.y, 2.0 * t.y * t.z - t.x};
    case Generator::V: return {t.y, t.x, 2.0 * t.x * t.y - t.z};
    case Generator::Q: return {t.y, t.z, t.x};
    case Generator::QInv: return {t.z, t.x, t.y};
  }
  return t;
}

double invariant(const TraceTriple& t) {
  return t.x * t.x + t.y * t.y + t.z * t.z - 2.0 * t.x * t.y * t.z - 1.0;
}

bool in_escape(const TraceTriple& t) {
  return std::fabs(t.y) > 1.0 && std::fabs(t.z) > 1.0 && std::fabs(t.y * t.z) > std::fabs(t.x);
}

ElementaryOrbit::ElementaryOrbit(ContinuedFraction cf, TraceTriple start, int level)
    : cf_(std::move(cf)), state_(start), level_(level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "orbit level must be >= 1");
}

void ElementaryOrbit::advance() {
  if (j_ == 0) a_ = cf_.coeff(static_cast<std::size_t>(level_ + 1));
  state_ = apply(Generator::U, state_);
  ++j_;
  if (j_ == a_) {
    state_ = apply(Generator::P, state_);
    j_ = 0;
    ++level_;
  }
  ++blocks_;
}

OrbitVerdict classify_triple(const ContinuedFraction& cf, const TraceTriple& start, int first_level,
                             int last_level) {
  OrbitVerdict v;
  v.invariant = invariant(start);
  ElementaryOrbit orbit(cf, start, first_level);
  while (true) {
    const TraceTriple& t = orbit.state();
    ++v.steps_checked;
    v.sup_norm = std::max(v.sup_norm, t.norm());
    if (in_escape(t)) {
      v.kind = OrbitKind::Escaped;
      v.escape_step = orbit.blocks();
      return v;
    }
    if (!(t.max_abs() <= kOverflowThreshold)) {
      v.kind = OrbitKind::Escaped;
      v.escape_step = orbit.blocks();
      v.overflow = true;
      return v;
    }
    if (orbit.at_level_start() && orbit.level() >= last_level) return v;
    orbit.advance();
  }
}

OrbitVerdict classify_orbit(const ModelSpec& spec, double E, int n_levels) {
  if (n_levels < 2) throw Error(ErrorKind::InvalidArgument, "n_levels must be at least 2");
  return classify_triple(spec.cf, initial_triple(spec, E), 1, n_levels);
}

std::vector<TraceTriple> orbit_trace(const ModelSpec& spec, double E, int n_levels) {
  if (n_levels < 1) throw Error(ErrorKind::InvalidArgument, "n_levels must be at least 1");
  std::vector<TraceTriple> out{initial_triple(spec, E)};
  for (int n = 1; n < n_levels; ++n) {
    if (!(out.back().max_abs() <= kOverflowThreshold)) break;
    out.push_back(step(spec.cf.coeff(static_cast<std::size_t>(n + 1)), out.back()));
  }
  return out;
}

}  // namespace qsturm
