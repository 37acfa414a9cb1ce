#include <algorithm>
#include <cmath>
#include <limits>

#include "alphaleak/kernels.hpp"

namespace alphaleak::kernels::scalar {

double log_sum_exp(std::span<const double> x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (x.empty()) return kNegInf;
  const double m = *std::max_element(x.begin(), x.end());
  if (std::isinf(m)) return m;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - m);
  return m + std::log(sum);
}

void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out) {
  if (scale == 0.0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(x.size()), std::exp(shift));
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(shift + scale * x[i]);
}

void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin) {
  const std::size_t len = out.size();
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = a[0] + b[k];
    argmin[k] = 0;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const double ai = a[i];
    for (std::size_t k = i; k < len; ++k) {
      const double cand = ai + b[k - i];
      if (cand < out[k]) {
        out[k] = cand;
        argmin[k] = static_cast<std::int64_t>(i);
      }
    }
  }
}

}  // namespace alphaleak::kernels::scalar
