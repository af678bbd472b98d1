#include <immintrin.h>

#include "lrm/simd.hpp"

// Compiled with -mavx2 -mfma -ffp-contract=off. Multiplies and adds are kept
// separate so every lane rounds exactly like the scalar reference.

namespace lrm::simd::avx2 {

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    y1 = _mm256_add_pd(y1, _mm256_mul_pd(va, _mm256_loadu_pd(x + i + 4)));
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total = total + x[i] * y[i];
  return total;
}

void xpby(const double* x, double b, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n) {
  if (n < 6) {
    scalar::stencil_row(diag, c, ym, yp, zm, zp, out, n);
    return;
  }
  auto one = [&](std::size_t i) {
    const double left = i > 0 ? c[i - 1] : 0.0;
    const double right = i + 1 < n ? c[i + 1] : 0.0;
    out[i] = diag * c[i] - (((((left + right) + ym[i]) + yp[i]) + zm[i]) + zp[i]);
  };
  one(0);
  const __m256d vd = _mm256_set1_pd(diag);
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(c + i - 1), _mm256_loadu_pd(c + i + 1));
    s = _mm256_add_pd(s, _mm256_loadu_pd(ym + i));
    s = _mm256_add_pd(s, _mm256_loadu_pd(yp + i));
    s = _mm256_add_pd(s, _mm256_loadu_pd(zm + i));
    s = _mm256_add_pd(s, _mm256_loadu_pd(zp + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_mul_pd(vd, _mm256_loadu_pd(c + i)), s));
  }
  for (; i < n; ++i) one(i);
}

}  // namespace lrm::simd::avx2
