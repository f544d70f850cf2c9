#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsturm/contfrac.hpp"
#include "qsturm/model.hpp"
#include "qsturm/word.hpp"

namespace qsturm {

/// Rauzy graph G(n): length-n factors as vertices, length-(n+1) factors as
/// edges, edge axb running from ax to xb. Vertices and edges are listed in
/// lexicographic order of their words.
struct RauzyGraph {
  std::size_t n = 0;
  std::vector<Word> vertices;
  std::vector<Word> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  ///< (source, target) per edge

  std::size_t out_degree(std::size_t v) const;
  std::size_t in_degree(std::size_t v) const;
};

/// Throws WindowTooLarge when n exceeds the safe complexity window of w.
RauzyGraph rauzy_graph(const Word& w, std::size_t n);

struct SpecialFactors {
  std::vector<Word> right_special;  ///< out-degree >= 2
  std::vector<Word> left_special;   ///< in-degree >= 2
  std::vector<Word> bispecial;
};

SpecialFactors special_factors(const RauzyGraph& g);

enum class QsKind { Periodic, Sturmian, QuasiSturmian, Other };

struct QsClassification {
  QsKind kind = QsKind::Other;
  std::int64_t k = 0;   ///< plateau constant in p(n) = n + k
  std::size_t n0 = 0;   ///< first n on the plateau
};

const char* to_string(QsKind kind);

/**
 * Classifies w by its complexity profile on the safe window [1, |w|/4].
 * The plateau must hold on the upper half of the trusted range [1, |w|/8];
 * a profile still rising slowly there raises InconclusiveWindow.
 */
QsClassification detect_qs(const Word& w);

struct Decomposition {
  Word prefix_w;       ///< symbols read before the first visit of the bispecial factor
  Substitution subst;  ///< images are the two return words through the bispecial factor
  Word base_prefix;    ///< choice sequence over {a, b}
  double theta_estimate = 0.0;  ///< frequency of a in base_prefix
  std::size_t bispecial_length = 0;
  std::size_t analyzed_length = 0;  ///< prefix_w S(base_prefix) = w[0, analyzed_length)
};

/**
 * Splits a (quasi-)Sturmian word into prefix, substitution and Sturmian base
 * using the shortest bispecial factor whose Rauzy graph has exactly two
 * return paths. The return path extending the bispecial factor by the
 * smaller symbol is labelled a.
 */
Decomposition cassaigne_decompose(const Word& w);

/// Frequency of a in the base, optionally snapped to the value of its
/// continued fraction truncated after `refine` coefficients.
double rotation_number(const Word& base, std::size_t refine);
inline double rotation_number(const Decomposition& d, std::size_t refine) {
  return rotation_number(d.base_prefix, refine);
}

/// Continued fraction of the base's frequency of a, cut after the last
/// convergent p_n/q_n with q_n^2 <= |base| (the frequency carries no more
/// precision than that).
ContinuedFraction rotation_cf(const Word& base);

}  // namespace qsturm
