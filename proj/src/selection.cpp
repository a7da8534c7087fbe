#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmmns/lmmns.hpp"

namespace lmmns {
namespace {

constexpr std::size_t kGroup = 5;

// k-th smallest (0-based) of a[lo, hi); reorders the range.
double select_in_place(std::vector<double>& a, std::size_t lo, std::size_t hi, std::size_t k) {
  for (;;) {
    const std::size_t len = hi - lo;
    if (len <= 2 * kGroup) {
      std::sort(a.begin() + lo, a.begin() + hi);
      return a[lo + k];
    }
    std::vector<double> medians;
    medians.reserve(len / kGroup + 1);
    for (std::size_t g = lo; g < hi; g += kGroup) {
      const std::size_t end = std::min(g + kGroup, hi);
      std::sort(a.begin() + g, a.begin() + end);
      medians.push_back(a[g + (end - g - 1) / 2]);
    }
    const double pivot = select_in_place(medians, 0, medians.size(), (medians.size() - 1) / 2);

    auto first = a.begin() + lo;
    auto last = a.begin() + hi;
    auto mid_lo = std::partition(first, last, [pivot](double v) { return v < pivot; });
    auto mid_hi = std::partition(mid_lo, last, [pivot](double v) { return v == pivot; });
    const auto n_less = static_cast<std::size_t>(mid_lo - first);
    const auto n_equal = static_cast<std::size_t>(mid_hi - mid_lo);
    if (k < n_less) {
      hi = lo + n_less;
    } else if (k < n_less + n_equal) {
      return pivot;
    } else {
      k -= n_less + n_equal;
      lo += n_less + n_equal;
    }
  }
}

}  // namespace

double median_select(std::span<const double> values, std::size_t k) {
  if (k < 1 || k > values.size()) {
    throw std::out_of_range("rank " + std::to_string(k) + " outside [1, " +
                            std::to_string(values.size()) + "]");
  }
  std::vector<double> work(values.begin(), values.end());
  if (std::any_of(work.begin(), work.end(), [](double v) { return std::isnan(v); })) {
    throw std::invalid_argument("median_select on NaN input");
  }
  return select_in_place(work, 0, work.size(), k - 1);
}

}  // namespace lmmns
