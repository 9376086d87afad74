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

// Reference kernels. These define the semantics the vector variants are
// tested against, so they stay plain loops.

#include "kopt/kernels.hpp"

namespace kopt::kernels::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sqdist(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy2(double alpha, const double* x, double beta, const double* z,
           double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i] + beta * z[i];
}

void mul_acc(const double* a, const double* b, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += a[i] * b[i];
}

void vaxpy(const double* coef, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += coef[i] * x[i];
}

void vxpay(const double* coef, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + coef[i] * y[i];
}

double signed_sum(const std::uint64_t* bits, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool neg = (bits[i >> 6] >> (i & 63)) & 1u;
    s += neg ? -y[i] : y[i];
  }
  return s;
}

void pair_ratio(double scale, double dq, const double* dcol, const double* q,
                double dr, const double* rcol, const double* r, double* out,
                std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double num = dq + dcol[j] - 2.0 * q[j];
    const double den = 1.0 + dr + rcol[j] - 2.0 * r[j];
    out[j] = scale * num / den;
  }
}

void pair_form(double dq, const double* dcol, const double* q, double* out,
               std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = dq + dcol[j] - 2.0 * q[j];
}

}  // namespace

const Table kTable = {dot,   sqdist,     axpy,       axpy2,    mul_acc, vaxpy,
                      vxpay, signed_sum, pair_ratio, pair_form};

}  // namespace kopt::kernels::scalar
