#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qsturm/contfrac.hpp"
#include "qsturm/model.hpp"
#include "qsturm/word.hpp"

namespace qsturm {

/// Upper bound on the number of symbols any single generated word may hold.
inline constexpr std::size_t kDefaultLengthBudget = std::size_t{1} << 27;

/// Level words s_{-1}, s_0, ..., s_{n_max}; at(n) accepts n >= -1.
struct LevelWords {
  std::vector<Word> words;

  const Word& at(int n) const { return words.at(static_cast<std::size_t>(n + 1)); }
  int max_level() const { return static_cast<int>(words.size()) - 2; }
};

/// s_{-1} = a, s_0 = b, s_1 = s_0^{a_1 - 1} s_{-1}, s_n = s_{n-1}^{a_n} s_{n-2}.
LevelWords sturmian_levels(const ContinuedFraction& cf, int n_max,
                           std::size_t budget = kDefaultLengthBudget);

/// First `length` symbols of c_theta.
Word characteristic_prefix(const ContinuedFraction& cf, std::size_t length,
                           std::size_t budget = kDefaultLengthBudget);

/// Morphic image of a word over {a, b}.
Word substitute(const Substitution& s, const Word& w);

/// s'_n = S(s_n) for n = -1..n_max.
LevelWords level_words_prime(const ModelSpec& spec, int n_max,
                             std::size_t budget = kDefaultLengthBudget);

/// Symbols shift..shift+length-1 of w S(c_theta).
Word qs_prefix(const ModelSpec& spec, std::size_t length, std::size_t shift = 0,
               std::size_t budget = kDefaultLengthBudget);

/// Potential values f(u(shift)), ..., f(u(shift + length - 1)).
std::vector<double> potential_values(const ModelSpec& spec, std::size_t length,
                                     std::size_t shift = 0);

/**
 * Factor complexity of a finite word: result[n] = number of distinct factors
 * of length n for n = 0..n_max (result[0] = 1). Counts are exact for the
 * finite word; they undercount the infinite sequence for n near |w|, so only
 * n <= |w|/4 should be read as properties of the sequence.
 */
std::vector<std::size_t> complexity(const Word& w, std::size_t n_max);

/// Largest n whose complexity value is trusted for a prefix of length `length`.
inline std::size_t complexity_safe_window(std::size_t length) { return length / 4; }

struct PalindromeSplit {
  Word palindrome;
  Word tail;
};

/**
 * s_n = pi_n t with |t| = 2 and pi_n a palindrome. With `strict_parity` the
 * tail must also be ba for odd n and ab for even n, the labelling under which
 * s_{2k+1} = pi 01 and s_{2k} = pi 10 reads a as 1 and b as 0.
 */
PalindromeSplit palindrome_split(const Word& level_word, int n, bool strict_parity = false);

/// S^R(x) = S(x)^R.
Substitution reflect_subst(const Substitution& s);

enum class SquareKind { Single, Composite };

struct Square {
  std::size_t site = 0;
  int level = 0;
  SquareKind kind = SquareKind::Single;
  std::size_t block_length = 0;  ///< |w| for the square ww
};

struct SquareReport {
  std::size_t site = 0;
  std::vector<Square> squares;  ///< one per level n_min..n_max
};

/// True when x is a cyclic rotation of y.
bool is_conjugate(std::span<const Symbol> x, std::span<const Symbol> y);

/**
 * Squares ww starting at `site` of `sequence` with w conjugate to s'_n
 * (single) or to s'_n s'_{n-1} (composite), for every n in [n_min, n_max].
 * Returns nullopt as soon as one level has neither.
 */
std::optional<std::vector<Square>> squares_at(const Word& sequence, std::size_t site,
                                              const LevelWords& primed, int n_min, int n_max);

/**
 * Smallest site m in a window of 4 |s'_{n_max}| symbols past `shift` at
 * which every level n_min..n_max has a square. Throws NoCommonSite when the
 * window holds none.
 */
SquareReport find_squares(const ModelSpec& spec, std::size_t shift, int n_max, int n_min = 2);

}  // namespace qsturm
