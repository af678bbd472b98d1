#pragma once

// Data-parallel inner loops used by the Monte Carlo field updates and the
// field-theory solver. Each operation has a scalar reference implementation
// and an AVX2 variant; the active variant is picked at runtime from the CPU
// features and can be pinned (tests compare the two paths).
//
// axpy and stencil_row round identically on every path. dot uses four
// interleaved partial sums on every path, so it is bit-identical as well.

#include <cstddef>
#include <span>
#include <string_view>

namespace lrm::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best ISA the running CPU supports (and this build was compiled for).
Isa detected_isa();
Isa active_isa();
// Pins the active ISA, clamped to what is supported. Returns the ISA in effect.
Isa set_active_isa(Isa isa);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
// y = x + b * y  (conjugate-gradient direction update)
void xpby(std::span<const double> x, double b, std::span<double> y);

// One x-row of the 7-point operator diag * c - (sum of six neighbours):
//   out[i] = diag * c[i] - (((((c[i-1] + c[i+1]) + ym[i]) + yp[i]) + zm[i]) + zp[i])
// with c[-1] = c[n] = 0. Missing neighbour rows are passed as zero rows.
void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void stencil_row(double diag, const double* c, const double* ym, const double* yp,
                 const double* zm, const double* zp, double* out, std::size_t n);
}  // namespace avx2

}  // namespace lrm::simd
