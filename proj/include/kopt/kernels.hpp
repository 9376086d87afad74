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

// Data-parallel inner loops shared by the dense, sketch and hull code.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled into separate
// translation units and picked once at startup from the CPU feature bits.
// Setting KOPT_SIMD=scalar in the environment forces the reference path.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace kopt::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct Table {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*sqdist)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y += alpha * x + beta * z
  void (*axpy2)(double alpha, const double* x, double beta, const double* z,
                double* y, std::size_t n);
  // acc[i] += a[i] * b[i]
  void (*mul_acc)(const double* a, const double* b, double* acc,
                  std::size_t n);
  // y[i] += coef[i] * x[i]
  void (*vaxpy)(const double* coef, const double* x, double* y,
                std::size_t n);
  // y[i] = x[i] + coef[i] * y[i]
  void (*vxpay)(const double* coef, const double* x, double* y,
                std::size_t n);
  // sum_i s_i * y[i] with s_i = -1 when bit i of `bits` is set, else +1
  double (*signed_sum)(const std::uint64_t* bits, const double* y,
                       std::size_t n);
  // out[j] = scale * (dq + dcol[j] - 2 q[j]) / (1 + dr + rcol[j] - 2 r[j])
  // Quadratic-form-over-resistance ratio for one row of candidate pairs.
  void (*pair_ratio)(double scale, double dq, const double* dcol,
                     const double* q, double dr, const double* rcol,
                     const double* r, double* out, std::size_t n);
  // out[j] = dq + dcol[j] - 2 q[j]
  void (*pair_form)(double dq, const double* dcol, const double* q,
                    double* out, std::size_t n);
};

// Implementation tables. `table` throws std::invalid_argument for an ISA the
// running CPU (or this build) cannot execute.
bool available(Isa isa);
const Table& table(Isa isa);

// Table selected for this process.
const Table& active();
Isa active_isa();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double sqdist(std::span<const double> a, std::span<const double> b) {
  return active().sqdist(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace scalar {
extern const Table kTable;
}  // namespace scalar

}  // namespace kopt::kernels
