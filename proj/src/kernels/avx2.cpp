// Compiled with -mavx2 -mfma. Nothing here may run unless
// isa_available(Isa::avx2) returned true.

#include <immintrin.h>

#include "bitan/kernels/kernels.hpp"

namespace bitan::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void horner_with_derivative(CSpan c, CSpan x, CMutSpan p, CMutSpan dp) {
  const std::size_t n = c.size;
  std::size_t k = 0;
  for (; k + kLanes <= x.size; k += kLanes) {
    const __m256d xr = _mm256_loadu_pd(x.re + k);
    const __m256d xi = _mm256_loadu_pd(x.im + k);
    __m256d pr = _mm256_setzero_pd(), pi = _mm256_setzero_pd();
    __m256d dr = _mm256_setzero_pd(), di = _mm256_setzero_pd();
    for (std::size_t i = n; i-- > 0;) {
      // dp = dp * x + p
      const __m256d ndr = _mm256_fmsub_pd(dr, xr, _mm256_fmsub_pd(di, xi, pr));
      const __m256d ndi = _mm256_fmadd_pd(dr, xi, _mm256_fmadd_pd(di, xr, pi));
      dr = ndr;
      di = ndi;
      // p = p * x + c[i]
      const __m256d cr = _mm256_set1_pd(c.re[i]);
      const __m256d ci = _mm256_set1_pd(c.im[i]);
      const __m256d npr = _mm256_fmsub_pd(pr, xr, _mm256_fmsub_pd(pi, xi, cr));
      const __m256d npi = _mm256_fmadd_pd(pr, xi, _mm256_fmadd_pd(pi, xr, ci));
      pr = npr;
      pi = npi;
    }
    _mm256_storeu_pd(p.re + k, pr);
    _mm256_storeu_pd(p.im + k, pi);
    _mm256_storeu_pd(dp.re + k, dr);
    _mm256_storeu_pd(dp.im + k, di);
  }
  if (k < x.size) {
    CSpan tail{x.re + k, x.im + k, x.size - k};
    detail::scalar_table.horner_with_derivative(
        c, tail, CMutSpan{p.re + k, p.im + k, tail.size},
        CMutSpan{dp.re + k, dp.im + k, tail.size});
  }
}

void aberth_sums(CSpan z, CMutSpan s) {
  const std::size_t n = z.size;
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d zr = _mm256_set1_pd(z.re[i]);
    const __m256d zi = _mm256_set1_pd(z.im[i]);
    __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + kLanes <= n; j += kLanes) {
      const __m256d dr = _mm256_sub_pd(zr, _mm256_loadu_pd(z.re + j));
      const __m256d di = _mm256_sub_pd(zi, _mm256_loadu_pd(z.im + j));
      const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
      // Lanes with den == 0 (j == i or a coincident point) are masked out.
      const __m256d live = _mm256_cmp_pd(den, _mm256_setzero_pd(), _CMP_NEQ_OQ);
      const __m256d inv = _mm256_and_pd(live, _mm256_div_pd(_mm256_set1_pd(1.0), den));
      sr = _mm256_fmadd_pd(dr, inv, sr);
      si = _mm256_fnmadd_pd(di, inv, si);
    }
    alignas(32) double br[kLanes], bi[kLanes];
    _mm256_store_pd(br, sr);
    _mm256_store_pd(bi, si);
    double accr = (br[0] + br[1]) + (br[2] + br[3]);
    double acci = (bi[0] + bi[1]) + (bi[2] + bi[3]);
    for (; j < n; ++j) {
      const double dr = z.re[i] - z.re[j];
      const double di = z.im[i] - z.im[j];
      const double den = dr * dr + di * di;
      if (den == 0.0) continue;
      const double inv = 1.0 / den;
      accr += dr * inv;
      acci -= di * inv;
    }
    s.re[i] = accr;
    s.im[i] = acci;
  }
}

void real_quartic_row(const double* c, double x0, double dx, std::span<double> out) {
  const __m256d c0 = _mm256_set1_pd(c[0]), c1 = _mm256_set1_pd(c[1]);
  const __m256d c2 = _mm256_set1_pd(c[2]), c3 = _mm256_set1_pd(c[3]);
  const __m256d c4 = _mm256_set1_pd(c[4]);
  const __m256d step = _mm256_set1_pd(dx);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  std::size_t k = 0;
  for (; k + kLanes <= out.size(); k += kLanes) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k)), lane);
    const __m256d x = _mm256_fmadd_pd(idx, step, _mm256_set1_pd(x0));
    __m256d v = _mm256_fmadd_pd(c4, x, c3);
    v = _mm256_fmadd_pd(v, x, c2);
    v = _mm256_fmadd_pd(v, x, c1);
    v = _mm256_fmadd_pd(v, x, c0);
    _mm256_storeu_pd(out.data() + k, v);
  }
  for (; k < out.size(); ++k) {
    const double x = x0 + static_cast<double>(k) * dx;
    out[k] = (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, &horner_with_derivative, &aberth_sums,
                             &real_quartic_row};
}  // namespace detail

}  // namespace bitan::kernels
