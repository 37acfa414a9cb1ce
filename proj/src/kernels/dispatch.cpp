#include <cstdlib>
#include <cstring>

#include "alphaleak/kernels.hpp"

namespace alphaleak::kernels {
namespace {

struct Table {
  Isa isa;
  double (*log_sum_exp)(std::span<const double>);
  void (*exp_affine)(std::span<const double>, double, double, std::span<double>);
  void (*min_plus_convolve)(std::span<const double>, std::span<const double>, std::span<double>,
                            std::span<std::int64_t>);
};

Table select() {
  Table scalar_table{Isa::kScalar, &scalar::log_sum_exp, &scalar::exp_affine,
                     &scalar::min_plus_convolve};
  const char* forced = std::getenv("ALPHALEAK_ISA");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table;
#if defined(ALPHALEAK_HAVE_AVX2)
  if (avx2_supported()) {
    return Table{Isa::kAvx2, &avx2::log_sum_exp, &avx2::exp_affine, &avx2::min_plus_convolve};
  }
#endif
  return scalar_table;
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

bool avx2_supported() {
#if defined(ALPHALEAK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

double log_sum_exp(std::span<const double> x) { return table().log_sum_exp(x); }

void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out) {
  table().exp_affine(x, scale, shift, out);
}

void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin) {
  table().min_plus_convolve(a, b, out, argmin);
}

}  // namespace alphaleak::kernels
