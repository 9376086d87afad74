// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// NEON kernels for AArch64 (two doubles per register). Only compiled on
// AArch64 targets, where Advanced SIMD is part of the base ISA.

#include <arm_neon.h>

#include "kopt/kernels.hpp"

namespace kopt::kernels::neon {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sqdist(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy2(double alpha, const double* x, double beta, const double* z,
           double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t acc = vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i));
    vst1q_f64(y + i, vfmaq_f64(acc, vb, vld1q_f64(z + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i] + beta * z[i];
}

void mul_acc(const double* a, const double* b, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(acc + i,
              vfmaq_f64(vld1q_f64(acc + i), vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) acc[i] += a[i] * b[i];
}

void vaxpy(const double* coef, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i,
              vfmaq_f64(vld1q_f64(y + i), vld1q_f64(coef + i), vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += coef[i] * x[i];
}

void vxpay(const double* coef, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i,
              vfmaq_f64(vld1q_f64(x + i), vld1q_f64(coef + i), vld1q_f64(y + i)));
  for (; i < n; ++i) y[i] = x[i] + coef[i] * y[i];
}

double signed_sum(const std::uint64_t* bits, const double* y, std::size_t n) {
  const uint64x2_t lane_bit = {1u, 2u};
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    const std::uint64_t w = bits[i >> 6];
    for (std::size_t k = 0; k < 64; k += 2) {
      const uint64x2_t sel = vtstq_u64(vdupq_n_u64(w >> k), lane_bit);
      const float64x2_t v = vld1q_f64(y + i + k);
      acc = vaddq_f64(acc, vbslq_f64(sel, vnegq_f64(v), v));
    }
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const bool neg = (bits[i >> 6] >> (i & 63)) & 1u;
    s += neg ? -y[i] : y[i];
  }
  return s;
}

void pair_ratio(double scale, double dq, const double* dcol, const double* q,
                double dr, const double* rcol, const double* r, double* out,
                std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(scale);
  const float64x2_t vdq = vdupq_n_f64(dq);
  const float64x2_t vdr = vdupq_n_f64(1.0 + dr);
  const float64x2_t m2 = vdupq_n_f64(-2.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t num =
        vfmaq_f64(vaddq_f64(vdq, vld1q_f64(dcol + j)), m2, vld1q_f64(q + j));
    const float64x2_t den =
        vfmaq_f64(vaddq_f64(vdr, vld1q_f64(rcol + j)), m2, vld1q_f64(r + j));
    vst1q_f64(out + j, vdivq_f64(vmulq_f64(vs, num), den));
  }
  for (; j < n; ++j) {
    const double num = dq + dcol[j] - 2.0 * q[j];
    const double den = 1.0 + dr + rcol[j] - 2.0 * r[j];
    out[j] = scale * num / den;
  }
}

void pair_form(double dq, const double* dcol, const double* q, double* out,
               std::size_t n) {
  const float64x2_t vdq = vdupq_n_f64(dq);
  const float64x2_t m2 = vdupq_n_f64(-2.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2)
    vst1q_f64(out + j,
              vfmaq_f64(vaddq_f64(vdq, vld1q_f64(dcol + j)), m2, vld1q_f64(q + j)));
  for (; j < n; ++j) out[j] = dq + dcol[j] - 2.0 * q[j];
}

}  // namespace

extern const Table kTable;
const Table kTable = {dot,   sqdist,     axpy,       axpy2,    mul_acc, vaxpy,
                      vxpay, signed_sum, pair_ratio, pair_form};

}  // namespace kopt::kernels::neon
