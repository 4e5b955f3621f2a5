#pragma once

#include <cstdint>
#include <vector>

namespace cellgames::engine {

/// Bi-infinite eventually periodic sequence: `left` repeats leftward of
/// `anchor`, `mid` occupies [anchor, anchor+|mid|), `right` repeats rightward
/// from anchor+|mid|. left and right are nonempty; mid may be empty.
template <typename T>
struct PeriodicSequence {
  std::int64_t anchor = 0;
  std::vector<T> left;
  std::vector<T> mid;
  std::vector<T> right;

  const T& value(std::int64_t i) const {
    if (i >= anchor) {
      std::int64_t off = i - anchor;
      if (off < static_cast<std::int64_t>(mid.size()))
        return mid[static_cast<std::size_t>(off)];
      std::int64_t r = (off - static_cast<std::int64_t>(mid.size())) %
                       static_cast<std::int64_t>(right.size());
      return right[static_cast<std::size_t>(r)];
    }
    // left word ends at anchor-1
    std::int64_t back = anchor - 1 - i;
    std::int64_t len = static_cast<std::int64_t>(left.size());
    std::int64_t idx = len - 1 - back % len;
    return left[static_cast<std::size_t>(idx)];
  }

  /// Every triple with middle position outside this closed range repeats a
  /// triple inside it, left/right periodicity makes the check finite.
  std::int64_t check_region_begin() const {
    return anchor - 2 * static_cast<std::int64_t>(left.size()) - 2;
  }
  std::int64_t check_region_end() const {
    return anchor + static_cast<std::int64_t>(mid.size()) +
           2 * static_cast<std::int64_t>(right.size()) + 2;
  }
};

/// True when pred(value(i-1), value(i), value(i+1)) holds for every middle
/// position of the finite checking region, hence for all of Z.
template <typename T, typename Pred>
bool verify_periodic(const PeriodicSequence<T>& seq, Pred&& pred) {
  for (std::int64_t i = seq.check_region_begin(); i <= seq.check_region_end();
       ++i) {
    if (!pred(seq.value(i - 1), seq.value(i), seq.value(i + 1))) return false;
  }
  return true;
}

/// Shortest word whose repetition yields `word`.
template <typename T>
std::vector<T> primitive_period(const std::vector<T>& word) {
  const std::size_t n = word.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = word[i] == word[i - p];
    if (ok) return std::vector<T>(word.begin(), word.begin() + p);
  }
  return word;
}

}  // namespace cellgames::engine
