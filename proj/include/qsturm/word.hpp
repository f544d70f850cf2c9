#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsturm {

using Symbol = std::uint32_t;

// Letters of the two-letter Sturmian base alphabet.
inline constexpr Symbol kLetterA = 0;
inline constexpr Symbol kLetterB = 1;

/// Finite word stored as an integer-coded symbol array.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }
  std::span<const Symbol> span() const noexcept { return symbols_; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  /// Symbols pos..pos+len-1; throws OutOfRange when the slice leaves the word.
  Word slice(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return slice(0, len); }

  Word& append(const Word& other);
  Word& push_back(Symbol s) {
    symbols_.push_back(s);
    return *this;
  }
  void reserve(std::size_t n) { symbols_.reserve(n); }

  Word reversed() const;
  bool is_palindrome() const;
  std::size_t count(Symbol s) const;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

Word operator+(Word lhs, const Word& rhs);

/// w^k.
Word power(const Word& w, std::size_t k);

/// w^R.
inline Word reflect(const Word& w) { return w.reversed(); }

/**
 * Label table mapping symbol codes to single-character labels.
 *
 * Codes are assigned in increasing label order when an alphabet is built
 * from a label set, so comparing codes compares labels.
 */
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string labels);

  /// {a, b} with a -> 0, b -> 1.
  static Alphabet binary() { return Alphabet("ab"); }

  /// Alphabet of all distinct characters of `text`, sorted.
  static Alphabet of_text(std::string_view text);

  std::size_t size() const noexcept { return labels_.size(); }
  char label(Symbol s) const;
  std::optional<Symbol> find(char label) const;
  const std::string& labels() const noexcept { return labels_; }

  /// Throws SymbolOutsideDomain for characters without a code.
  Word parse(std::string_view text) const;
  std::string render(const Word& w) const;
  std::string render(std::span<const Symbol> w) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string labels_;
};

}  // namespace qsturm
