#include "qsturm/factor_index.hpp"

#include <algorithm>
#include <numeric>

#include "qsturm/error.hpp"

namespace qsturm {

namespace {

// Prefix doubling over cyclic shifts of text + sentinel, counting sort per
// round: O(n log n).
std::vector<std::uint32_t> build_suffix_array(std::span<const Symbol> text) {
  const std::size_t n = text.size() + 1;
  std::vector<std::uint32_t> rank(n);
  // compress symbols to 1..k, sentinel 0
  std::vector<Symbol> sorted(text.begin(), text.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < text.size(); ++i) {
    rank[i] = static_cast<std::uint32_t>(
        std::lower_bound(sorted.begin(), sorted.end(), text[i]) - sorted.begin() + 1);
  }
  rank[n - 1] = 0;

  std::vector<std::uint32_t> sa(n), tmp(n), cnt(std::max<std::size_t>(n, sorted.size() + 1), 0);
  for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
  for (std::size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
  for (std::size_t i = n; i-- > 0;) sa[--cnt[rank[i]]] = static_cast<std::uint32_t>(i);

  std::vector<std::uint32_t> shifted(n), next_rank(n);
  for (std::size_t k = 1; k < n; k <<= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i] = static_cast<std::uint32_t>((sa[i] + n - k) % n);
    }
    const std::uint32_t classes = rank[sa[n - 1]] + 1;
    std::fill(cnt.begin(), cnt.begin() + classes, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rank[shifted[i]]];
    for (std::size_t i = 1; i < classes; ++i) cnt[i] += cnt[i - 1];
    for (std::size_t i = n; i-- > 0;) tmp[--cnt[rank[shifted[i]]]] = shifted[i];
    sa.swap(tmp);

    next_rank[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const auto a = sa[i - 1];
      const auto b = sa[i];
      const bool same = rank[a] == rank[b] && rank[(a + k) % n] == rank[(b + k) % n];
      next_rank[b] = next_rank[a] + (same ? 0 : 1);
    }
    rank.swap(next_rank);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  // drop the sentinel suffix, which sorts first
  sa.erase(sa.begin());
  return sa;
}

std::vector<std::uint32_t> build_lcp(std::span<const Symbol> text, const std::vector<std::uint32_t>& sa) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

FactorIndex::FactorIndex(std::span<const Symbol> text) : n_(text.size()) {
  if (text.size() >= UINT32_MAX - 1) {
    throw Error(ErrorKind::LengthBudgetExceeded, "factor index limited to 2^32 - 2 symbols");
  }
  if (n_ == 0) return;
  sa_ = build_suffix_array(text);
  lcp_ = build_lcp(text, sa_);
}

std::vector<std::size_t> FactorIndex::complexity(std::size_t n_max) const {
  // suffix at sorted index i contributes a new factor for every length in
  // (lcp[i], suffix length]
  std::vector<std::int64_t> diff(n_max + 2, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t len = n_ - sa_[i];
    const std::size_t from = static_cast<std::size_t>(lcp_[i]) + 1;
    if (from > n_max) continue;
    diff[from] += 1;
    diff[std::min(len, n_max) + 1] -= 1;
  }
  std::vector<std::size_t> counts(n_max + 1, 0);
  counts[0] = 1;
  std::int64_t run = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    run += diff[n];
    counts[n] = static_cast<std::size_t>(run);
  }
  return counts;
}

std::vector<std::uint32_t> FactorIndex::classes(std::size_t n, std::uint32_t* class_count) const {
  std::vector<std::uint32_t> out(n_, kNoClass);
  std::uint32_t next = 0;
  bool open = false;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t pos = sa_[i];
    if (n_ - pos < n) {
      open = false;
      continue;
    }
    if (!open || lcp_[i] < n) ++next;
    open = true;
    out[pos] = next - 1;
  }
  if (class_count) *class_count = next;
  return out;
}

}  // namespace qsturm
