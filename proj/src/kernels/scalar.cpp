#include "bitan/kernels/kernels.hpp"

namespace bitan::kernels {
namespace {

void horner_with_derivative(CSpan c, CSpan x, CMutSpan p, CMutSpan dp) {
  const std::size_t n = c.size;
  for (std::size_t k = 0; k < x.size; ++k) {
    const double xr = x.re[k], xi = x.im[k];
    double pr = 0.0, pi = 0.0, dr = 0.0, di = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      // dp = dp * x + p
      const double ndr = dr * xr - di * xi + pr;
      const double ndi = dr * xi + di * xr + pi;
      dr = ndr;
      di = ndi;
      // p = p * x + c[i]
      const double npr = pr * xr - pi * xi + c.re[i];
      const double npi = pr * xi + pi * xr + c.im[i];
      pr = npr;
      pi = npi;
    }
    p.re[k] = pr;
    p.im[k] = pi;
    dp.re[k] = dr;
    dp.im[k] = di;
  }
}

void aberth_sums(CSpan z, CMutSpan s) {
  for (std::size_t i = 0; i < z.size; ++i) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < z.size; ++j) {
      if (j == i) continue;
      const double dr = z.re[i] - z.re[j];
      const double di = z.im[i] - z.im[j];
      const double den = dr * dr + di * di;
      if (den == 0.0) continue;
      const double inv = 1.0 / den;
      sr += dr * inv;
      si -= di * inv;
    }
    s.re[i] = sr;
    s.im[i] = si;
  }
}

void real_quartic_row(const double* c, double x0, double dx, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double x = x0 + static_cast<double>(k) * dx;
    out[k] = (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &horner_with_derivative, &aberth_sums,
                               &real_quartic_row};
}  // namespace detail

}  // namespace bitan::kernels
