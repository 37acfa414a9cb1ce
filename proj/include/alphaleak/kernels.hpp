#pragma once

// Data-parallel inner loops shared by the measure and oracle code.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2+FMA variant. The public entry points dispatch once per process to
// the best variant the CPU supports; setting ALPHALEAK_ISA=scalar in the
// environment pins the reference path. Variants are equivalence-tested
// against each other (tests/test_kernels.cpp).

#include <cstdint>
#include <span>

namespace alphaleak::kernels {

enum class Isa { kScalar, kAvx2 };

Isa active_isa();
const char* isa_name(Isa isa);
// True when the AVX2 variants are compiled in and the CPU reports AVX2+FMA.
bool avx2_supported();

// log(sum_i exp(x_i)) with max shift. Returns -inf for an empty span or when
// every entry is -inf, +inf when any entry is +inf.
double log_sum_exp(std::span<const double> x);

// out[i] = exp(shift + scale * x[i]). A zero scale yields exp(shift) for
// every entry, including x[i] = -inf.
void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out);

// out[k] = min_{0 <= i <= k} a[i] + b[k - i] for k < out.size(), with
// argmin[k] the smallest minimizing i. a and b must be at least out.size()
// long; argmin must be exactly out.size().
void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin);

namespace scalar {
double log_sum_exp(std::span<const double> x);
void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out);
void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin);
}  // namespace scalar

#if defined(ALPHALEAK_HAVE_AVX2)
namespace avx2 {
double log_sum_exp(std::span<const double> x);
void exp_affine(std::span<const double> x, double scale, double shift, std::span<double> out);
void min_plus_convolve(std::span<const double> a, std::span<const double> b,
                       std::span<double> out, std::span<std::int64_t> argmin);
}  // namespace avx2
#endif

}  // namespace alphaleak::kernels
