#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsturm/word.hpp"

namespace qsturm {

/**
 * Suffix array with LCP table over a finite word.
 *
 * Distinct factors of length n correspond to maximal runs of suffixes in
 * sorted order sharing a common prefix of length n, so factor counts and
 * factor identities come out exactly, without hashing.
 */
class FactorIndex {
 public:
  explicit FactorIndex(std::span<const Symbol> text);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::uint32_t>& suffix_array() const noexcept { return sa_; }
  const std::vector<std::uint32_t>& lcp() const noexcept { return lcp_; }

  /// counts[n] = number of distinct factors of length n, n = 0..n_max.
  std::vector<std::size_t> complexity(std::size_t n_max) const;

  static constexpr std::uint32_t kNoClass = UINT32_MAX;

  /**
   * Factor classes of length n: result[i] identifies the factor starting at
   * position i (kNoClass when fewer than n symbols remain). Class ids are
   * dense, numbered in lexicographic order of the factors.
   */
  std::vector<std::uint32_t> classes(std::size_t n, std::uint32_t* class_count = nullptr) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> lcp_;
};

}  // namespace qsturm
