#include "qsturm/words.hpp"

#include <algorithm>
#include <string>

#include "qsturm/error.hpp"
#include "qsturm/factor_index.hpp"

namespace qsturm {

const Word& Substitution::image(Symbol letter) const {
  if (letter == kLetterA) return image_a;
  if (letter == kLetterB) return image_b;
  throw Error(ErrorKind::SymbolOutsideDomain,
              "substitution is defined on {a, b} only, got code " + std::to_string(letter));
}

bool Substitution::is_aperiodic() const { return image_a + image_b != image_b + image_a; }

ModelSpec ModelSpec::from_labels(ContinuedFraction cf, std::string_view image_a,
                                 std::string_view image_b, std::string_view prefix,
                                 const std::map<char, double>& potential,
                                 bool allow_non_injective) {
  std::string labels;
  ModelSpec spec;
  for (const auto& [label, v] : potential) {
    labels.push_back(label);
    spec.potential.push_back(v);
  }
  spec.alphabet = Alphabet(labels);
  spec.cf = std::move(cf);
  spec.subst = {spec.alphabet.parse(image_a), spec.alphabet.parse(image_b)};
  spec.prefix = spec.alphabet.parse(prefix);
  spec.allow_non_injective = allow_non_injective;
  spec.validate();
  return spec;
}

void ModelSpec::validate() const {
  if (!cf.has(1)) throw Error(ErrorKind::InvalidArgument, "continued fraction has no coefficients");
  if (subst.image_a.empty() || subst.image_b.empty()) {
    throw Error(ErrorKind::InvalidArgument, "substitution images must be nonempty");
  }
  if (alphabet.size() == 0 || potential.size() != alphabet.size()) {
    throw Error(ErrorKind::InvalidArgument, "potential must assign a value to every symbol");
  }
  auto check = [&](const Word& w) {
    for (Symbol s : w) {
      if (s >= alphabet.size()) {
        throw Error(ErrorKind::SymbolOutsideDomain, "symbol code " + std::to_string(s) + " has no potential");
      }
    }
  };
  check(subst.image_a);
  check(subst.image_b);
  check(prefix);
  if (!allow_non_injective) {
    std::vector<double> sorted = potential;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "potential is not injective (set allow_non_injective to permit)");
    }
  }
}

double ModelSpec::potential_of(Symbol s) const {
  if (s >= potential.size()) {
    throw Error(ErrorKind::SymbolOutsideDomain, "symbol code " + std::to_string(s) + " has no potential");
  }
  return potential[s];
}

double ModelSpec::min_potential() const { return *std::min_element(potential.begin(), potential.end()); }
double ModelSpec::max_potential() const { return *std::max_element(potential.begin(), potential.end()); }

namespace {

void check_budget(std::size_t length, std::size_t budget) {
  if (length > budget) {
    throw Error(ErrorKind::LengthBudgetExceeded,
                "word of length " + std::to_string(length) + " exceeds budget " + std::to_string(budget));
  }
}

// |s_1| = a_1, |s_n| = a_n |s_{n-1}| + |s_{n-2}|; saturates instead of
// overflowing so the budget check can reject it.
std::size_t next_length(std::size_t prev, std::size_t prev2, std::int64_t a) {
  std::size_t out = 0;
  if (__builtin_mul_overflow(prev, static_cast<std::size_t>(a), &out) ||
      __builtin_add_overflow(out, prev2, &out)) {
    return SIZE_MAX;
  }
  return out;
}

Word level_one(const ContinuedFraction& cf) {
  Word w = power(Word{kLetterB}, static_cast<std::size_t>(cf.coeff(1) - 1));
  w.push_back(kLetterA);
  return w;
}

}  // namespace

LevelWords sturmian_levels(const ContinuedFraction& cf, int n_max, std::size_t budget) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  LevelWords out;
  out.words.reserve(static_cast<std::size_t>(n_max) + 2);
  out.words.push_back(Word{kLetterA});
  out.words.push_back(Word{kLetterB});
  check_budget(static_cast<std::size_t>(cf.coeff(1)), budget);
  out.words.push_back(level_one(cf));
  for (int n = 2; n <= n_max; ++n) {
    const Word& prev = out.at(n - 1);
    const Word& prev2 = out.at(n - 2);
    const std::int64_t a = cf.coeff(static_cast<std::size_t>(n));
    check_budget(next_length(prev.size(), prev2.size(), a), budget);
    Word w = power(prev, static_cast<std::size_t>(a));
    w.append(prev2);
    out.words.push_back(std::move(w));
  }
  return out;
}

Word characteristic_prefix(const ContinuedFraction& cf, std::size_t length, std::size_t budget) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "length must be at least 1");
  check_budget(length, budget);
  Word prev2{kLetterB};
  Word prev = level_one(cf);
  for (std::size_t n = 2; prev.size() < length; ++n) {
    const std::int64_t a = cf.coeff(n);
    // the next level only needs to cover `length`; truncating is safe because
    // s_{n-1} is a prefix of s_n
    std::size_t full = next_length(prev.size(), prev2.size(), a);
    Word w;
    w.reserve(std::min(full, length + prev.size()));
    for (std::int64_t k = 0; k < a && w.size() < length; ++k) w.append(prev);
    if (w.size() < length) w.append(prev2);
    prev2 = std::move(prev);
    prev = std::move(w);
  }
  return prev.prefix(length);
}

Word substitute(const Substitution& s, const Word& w) {
  std::size_t total = 0;
  for (Symbol x : w) total += s.image(x).size();
  Word out;
  out.reserve(total);
  for (Symbol x : w) out.append(s.image(x));
  return out;
}

LevelWords level_words_prime(const ModelSpec& spec, int n_max, std::size_t budget) {
  LevelWords base = sturmian_levels(spec.cf, n_max, budget / std::max<std::size_t>(1, spec.subst.min_image_length()));
  LevelWords out;
  out.words.reserve(base.words.size());
  for (const Word& w : base.words) {
    std::size_t len = 0;
    for (Symbol x : w) len += spec.subst.image(x).size();
    check_budget(len, budget);
    out.words.push_back(substitute(spec.subst, w));
  }
  return out;
}

Word qs_prefix(const ModelSpec& spec, std::size_t length, std::size_t shift, std::size_t budget) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "length must be at least 1");
  const std::size_t need = shift + length;
  check_budget(need, budget);
  Word out;
  out.reserve(need + spec.subst.max_image_length());
  out.append(spec.prefix);
  if (out.size() < need) {
    const std::size_t rest = need - out.size();
    const std::size_t base_len = rest / spec.subst.min_image_length() + 1;
    const Word base = characteristic_prefix(spec.cf, base_len, budget);
    for (Symbol x : base) {
      out.append(spec.subst.image(x));
      if (out.size() >= need) break;
    }
  }
  return out.slice(shift, length);
}

std::vector<double> potential_values(const ModelSpec& spec, std::size_t length, std::size_t shift) {
  const Word u = qs_prefix(spec, length, shift);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = spec.potential_of(u[i]);
  return out;
}

std::vector<std::size_t> complexity(const Word& w, std::size_t n_max) {
  if (n_max >= w.size()) {
    throw Error(ErrorKind::WindowTooLarge, "n_max " + std::to_string(n_max) +
                                               " must be below the word length " + std::to_string(w.size()));
  }
  return FactorIndex(w.span()).complexity(n_max);
}

PalindromeSplit palindrome_split(const Word& level_word, int n, bool strict_parity) {
  if (level_word.size() < 2) {
    throw Error(ErrorKind::NotPalindromicDecomposition, "level word shorter than two symbols");
  }
  const std::size_t core = level_word.size() - 2;
  PalindromeSplit out{level_word.prefix(core), level_word.slice(core, 2)};
  const bool tail_ab = out.tail == Word{kLetterA, kLetterB};
  const bool tail_ba = out.tail == Word{kLetterB, kLetterA};
  if (!tail_ab && !tail_ba) {
    throw Error(ErrorKind::NotPalindromicDecomposition, "tail is neither ab nor ba");
  }
  if (strict_parity && (n % 2 != 0) != tail_ba) {
    throw Error(ErrorKind::NotPalindromicDecomposition,
                "tail does not match the parity of level " + std::to_string(n));
  }
  if (!out.palindrome.is_palindrome()) {
    throw Error(ErrorKind::NotPalindromicDecomposition, "core is not a palindrome");
  }
  return out;
}

Substitution reflect_subst(const Substitution& s) { return {s.image_a.reversed(), s.image_b.reversed()}; }

bool is_conjugate(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.size() != y.size()) return false;
  const std::size_t n = x.size();
  if (n == 0) return true;
  // KMP search of x in y y
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && x[i] != x[k]) k = fail[k - 1];
    if (x[i] == x[k]) ++k;
    fail[i] = k;
  }
  for (std::size_t i = 0, k = 0; i < 2 * n - 1; ++i) {
    const Symbol c = y[i % n];
    while (k > 0 && c != x[k]) k = fail[k - 1];
    if (c == x[k]) ++k;
    if (k == n) return true;
  }
  return false;
}

namespace {

bool is_square_at(std::span<const Symbol> seq, std::size_t site, std::size_t len) {
  if (site + 2 * len > seq.size()) return false;
  return std::equal(seq.begin() + site, seq.begin() + site + len, seq.begin() + site + len);
}

}  // namespace

std::optional<std::vector<Square>> squares_at(const Word& sequence, std::size_t site,
                                              const LevelWords& primed, int n_min, int n_max) {
  const auto seq = sequence.span();
  std::vector<Square> found;
  for (int n = n_min; n <= n_max; ++n) {
    const Word& single = primed.at(n);
    if (is_square_at(seq, site, single.size()) &&
        is_conjugate(seq.subspan(site, single.size()), single.span())) {
      found.push_back({site, n, SquareKind::Single, single.size()});
      continue;
    }
    const Word composite = single + primed.at(n - 1);
    if (is_square_at(seq, site, composite.size()) &&
        is_conjugate(seq.subspan(site, composite.size()), composite.span())) {
      found.push_back({site, n, SquareKind::Composite, composite.size()});
      continue;
    }
    return std::nullopt;
  }
  return found;
}

SquareReport find_squares(const ModelSpec& spec, std::size_t shift, int n_max, int n_min) {
  if (n_min < 1 || n_max < n_min) {
    throw Error(ErrorKind::InvalidArgument, "need 1 <= n_min <= n_max");
  }
  const LevelWords primed = level_words_prime(spec, n_max);
  const std::size_t top = primed.at(n_max).size();
  const std::size_t window = 4 * top;
  const std::size_t longest = top + primed.at(n_max - 1).size();
  const Word seq = qs_prefix(spec, window + 2 * longest, shift);
  for (std::size_t m = 0; m < window; ++m) {
    if (auto hit = squares_at(seq, m, primed, n_min, n_max)) return {m, std::move(*hit)};
  }
  throw Error(ErrorKind::NoCommonSite, "no site within " + std::to_string(window) +
                                           " symbols carries squares for levels " + std::to_string(n_min) +
                                           ".." + std::to_string(n_max));
}

}  // namespace qsturm
