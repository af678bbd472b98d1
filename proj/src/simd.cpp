#include "lrm/simd.hpp"

#include <atomic>

#include "lrm/errors.hpp"

namespace lrm::simd {

namespace {

bool cpu_has_avx2() {
#if defined(LRM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw ValidationError("simd: span sizes differ");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

#if defined(LRM_HAVE_AVX2_TU)
#define LRM_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define LRM_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  LRM_DISPATCH(axpy, a, x.data(), y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  check_sizes(x.size(), y.size());
  return LRM_DISPATCH(dot, x.data(), y.data(), x.size());
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
  check_sizes(x.size(), y.size());
  LRM_DISPATCH(xpby, x.data(), b, y.data(), x.size());
}

void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n) {
  LRM_DISPATCH(stencil_row, diag, c, ym, yp, zm, zp, out, n);
}

#undef LRM_DISPATCH

}  // namespace lrm::simd
