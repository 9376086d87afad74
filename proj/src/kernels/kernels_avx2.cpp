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

// AVX2+FMA kernels. This file is built with -mavx2 -mfma and must only be
// reached through the dispatch table after a CPU feature check. It includes
// nothing but the public table declaration so no inline code compiled here
// can leak into the scalar paths.

#include <immintrin.h>

#include <array>

#include "kopt/kernels.hpp"

namespace kopt::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sqdist(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy2(double alpha, const double* x, double beta, const double* z,
           double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_loadu_pd(y + i);
    acc = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), acc);
    acc = _mm256_fmadd_pd(vb, _mm256_loadu_pd(z + i), acc);
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < n; ++i) y[i] += alpha * x[i] + beta * z[i];
}

void mul_acc(const double* a, const double* b, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                                              _mm256_loadu_pd(b + i),
                                              _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) acc[i] += a[i] * b[i];
}

void vaxpy(const double* coef, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(_mm256_loadu_pd(coef + i),
                                            _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += coef[i] * x[i];
}

void vxpay(const double* coef, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(_mm256_loadu_pd(coef + i),
                                            _mm256_loadu_pd(y + i),
                                            _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] = x[i] + coef[i] * y[i];
}

// Sign-bit masks for every 4-bit pattern: lane k is negated when bit k is set.
struct SignMasks {
  alignas(32) std::array<std::array<std::uint64_t, 4>, 16> m{};
  SignMasks() {
    for (unsigned p = 0; p < 16; ++p)
      for (unsigned k = 0; k < 4; ++k)
        m[p][k] = ((p >> k) & 1u) ? 0x8000000000000000ull : 0ull;
  }
};

double signed_sum(const std::uint64_t* bits, const double* y, std::size_t n) {
  static const SignMasks masks;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    std::uint64_t w = bits[i >> 6];
    for (std::size_t k = 0; k < 64; k += 8, w >>= 8) {
      const __m256d s0 = _mm256_load_pd(
          reinterpret_cast<const double*>(masks.m[w & 15u].data()));
      const __m256d s1 = _mm256_load_pd(
          reinterpret_cast<const double*>(masks.m[(w >> 4) & 15u].data()));
      acc0 = _mm256_add_pd(acc0, _mm256_xor_pd(_mm256_loadu_pd(y + i + k), s0));
      acc1 = _mm256_add_pd(acc1,
                           _mm256_xor_pd(_mm256_loadu_pd(y + i + k + 4), s1));
    }
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const bool neg = (bits[i >> 6] >> (i & 63)) & 1u;
    s += neg ? -y[i] : y[i];
  }
  return s;
}

void pair_ratio(double scale, double dq, const double* dcol, const double* q,
                double dr, const double* rcol, const double* r, double* out,
                std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vdq = _mm256_set1_pd(dq);
  const __m256d vdr = _mm256_set1_pd(1.0 + dr);
  const __m256d m2 = _mm256_set1_pd(-2.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d num = _mm256_fmadd_pd(
        m2, _mm256_loadu_pd(q + j), _mm256_add_pd(vdq, _mm256_loadu_pd(dcol + j)));
    const __m256d den = _mm256_fmadd_pd(
        m2, _mm256_loadu_pd(r + j), _mm256_add_pd(vdr, _mm256_loadu_pd(rcol + j)));
    _mm256_storeu_pd(out + j, _mm256_div_pd(_mm256_mul_pd(vs, num), den));
  }
  for (; j < n; ++j) {
    const double num = dq + dcol[j] - 2.0 * q[j];
    const double den = 1.0 + dr + rcol[j] - 2.0 * r[j];
    out[j] = scale * num / den;
  }
}

void pair_form(double dq, const double* dcol, const double* q, double* out,
               std::size_t n) {
  const __m256d vdq = _mm256_set1_pd(dq);
  const __m256d m2 = _mm256_set1_pd(-2.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(out + j,
                     _mm256_fmadd_pd(m2, _mm256_loadu_pd(q + j),
                                     _mm256_add_pd(vdq, _mm256_loadu_pd(dcol + j))));
  }
  for (; j < n; ++j) out[j] = dq + dcol[j] - 2.0 * q[j];
}

}  // namespace

extern const Table kTable;
const Table kTable = {dot,   sqdist,     axpy,       axpy2,    mul_acc, vaxpy,
                      vxpay, signed_sum, pair_ratio, pair_form};

}  // namespace kopt::kernels::avx2
