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

#include <cmath>
#include <random>

#include "kopt/error.hpp"
#include "kopt/kernels.hpp"
#include "kopt/linalg.hpp"

namespace kopt {

SignProjection::SignProjection(std::size_t t, std::size_t cols, std::uint64_t seed)
    : t_(t), cols_(cols), words_((cols + 63) / 64), seed_(seed),
      scale_(t > 0 ? 1.0 / std::sqrt(double(t)) : 0.0) {
  if (t == 0) throw InvalidArgument("projection needs at least one row");
  bits_.resize(t_ * words_);
  for (std::size_t j = 0; j < t_; ++j) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(j),
                      std::uint32_t(std::uint64_t(j) >> 32)};
    std::mt19937_64 rng(seq);
    std::uint64_t* w = bits_.data() + j * words_;
    for (std::size_t q = 0; q < words_; ++q) w[q] = rng();
    if (cols_ % 64) w[words_ - 1] &= (std::uint64_t{1} << (cols_ % 64)) - 1;
  }
}

double SignProjection::entry(std::size_t j, std::size_t i) const {
  return (row_bits(j)[i / 64] >> (i % 64)) & 1u ? -scale_ : scale_;
}

void SignProjection::row(std::size_t j, double* out) const {
  const std::uint64_t* w = row_bits(j);
  for (std::size_t i = 0; i < cols_; ++i) out[i] = (w[i / 64] >> (i % 64)) & 1u ? -scale_ : scale_;
}

void SignProjection::multiply(std::span<const double> y, std::span<double> out) const {
  if (y.size() != cols_ || out.size() != t_)
    throw InvalidArgument("projection operand has wrong length");
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < t_; ++j) out[j] = scale_ * k.signed_sum(row_bits(j), y.data(), cols_);
}

std::size_t jl_rows(std::size_t n, double beta, double c_jl) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(c_jl > 0.0)) throw InvalidArgument("c_jl must be positive");
  const double t = std::ceil(c_jl * std::log(double(std::max<std::size_t>(n, 2))) / (beta * beta));
  return std::max<std::size_t>(1, std::size_t(t));
}

}  // namespace kopt
