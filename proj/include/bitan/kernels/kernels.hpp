#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and an AVX2/FMA variant; the variant is picked once at
// startup from CPUID. Complex data is passed split (structure of arrays).
//
// Setting BITAN_SIMD=scalar in the environment forces the reference kernels.

#include <cstddef>
#include <span>
#include <string_view>

namespace bitan::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True if the running CPU can execute kernels for `isa`.
bool isa_available(Isa isa);

/// Split-complex view of n values.
struct CSpan {
  const double* re;
  const double* im;
  std::size_t size;
};

struct CMutSpan {
  double* re;
  double* im;
  std::size_t size;
};

struct KernelTable {
  Isa isa;

  /// p[k] = sum_i c[i] x[k]^i and dp[k] = p'(x[k]) for every point.
  /// coefficients are in ascending order.
  void (*horner_with_derivative)(CSpan coeffs, CSpan x, CMutSpan p, CMutSpan dp);

  /// s[i] = sum of 1 / (z[i] - z[j]) over j with z[j] != z[i].
  void (*aberth_sums)(CSpan z, CMutSpan s);

  /// out[k] = c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4 at x = x0 + k dx.
  void (*real_quartic_row)(const double* coeffs5, double x0, double dx, std::span<double> out);
};

/// The table for a specific instruction set. Throws std::invalid_argument if
/// the CPU lacks it.
const KernelTable& kernel_table(Isa isa);

/// The best available table, honoring BITAN_SIMD.
const KernelTable& active();

namespace detail {
extern const KernelTable scalar_table;
extern const KernelTable avx2_table;
}  // namespace detail

}  // namespace bitan::kernels
