#include "lrm/simd.hpp"

namespace lrm::simd::scalar {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int k = 0; k < 4; ++k) s[k] = s[k] + x[i + k] * y[i + k];
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total = total + x[i] * y[i];
  return total;
}

void xpby(const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? c[i - 1] : 0.0;
    const double right = i + 1 < n ? c[i + 1] : 0.0;
    out[i] = diag * c[i] - (((((left + right) + ym[i]) + yp[i]) + zm[i]) + zp[i]);
  }
}

}  // namespace lrm::simd::scalar
