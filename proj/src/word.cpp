#include "qsturm/word.hpp"

#include <algorithm>

#include "qsturm/error.hpp"

namespace qsturm {

Word Word::slice(std::size_t pos, std::size_t len) const {
  if (pos > symbols_.size() || len > symbols_.size() - pos) {
    throw Error(ErrorKind::OutOfRange, "slice [" + std::to_string(pos) + ", " +
                                           std::to_string(pos + len) + ") of word of length " +
                                           std::to_string(symbols_.size()));
  }
  return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                  symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word& Word::append(const Word& other) {
  symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return *this;
}

Word Word::reversed() const { return Word(std::vector<Symbol>(symbols_.rbegin(), symbols_.rend())); }

bool Word::is_palindrome() const { return std::equal(symbols_.begin(), symbols_.end(), symbols_.rbegin()); }

std::size_t Word::count(Symbol s) const {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), s));
}

Word operator+(Word lhs, const Word& rhs) {
  lhs.append(rhs);
  return lhs;
}

Word power(const Word& w, std::size_t k) {
  Word out;
  out.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.append(w);
  return out;
}

Alphabet::Alphabet(std::string labels) : labels_(std::move(labels)) {
  std::string sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::InvalidArgument, "alphabet labels must be distinct: \"" + labels_ + "\"");
  }
}

Alphabet Alphabet::of_text(std::string_view text) {
  std::string labels(text);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return Alphabet(std::move(labels));
}

char Alphabet::label(Symbol s) const {
  if (s >= labels_.size()) {
    throw Error(ErrorKind::SymbolOutsideDomain, "symbol code " + std::to_string(s) + " has no label");
  }
  return labels_[s];
}

std::optional<Symbol> Alphabet::find(char label) const {
  const auto pos = labels_.find(label);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Symbol>(pos);
}

Word Alphabet::parse(std::string_view text) const {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) {
    const auto s = find(c);
    if (!s) {
      throw Error(ErrorKind::SymbolOutsideDomain,
                  std::string("label '") + c + "' is not in alphabet \"" + labels_ + "\"");
    }
    out.push_back(*s);
  }
  return Word(std::move(out));
}

std::string Alphabet::render(std::span<const Symbol> w) const {
  std::string out;
  out.reserve(w.size());
  for (auto s : w) out.push_back(label(s));
  return out;
}

std::string Alphabet::render(const Word& w) const { return render(w.span()); }

}  // namespace qsturm
