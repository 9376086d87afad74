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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kopt/kernels.hpp"

namespace kopt::kernels {

#if defined(KOPT_HAVE_AVX2)
namespace avx2 {
extern const Table kTable;
}
#endif
#if defined(KOPT_HAVE_NEON)
namespace neon {
extern const Table kTable;
}
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(KOPT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(KOPT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  if (!available(isa))
    throw std::invalid_argument("kernel ISA not available: " +
                                std::string(isa_name(isa)));
  switch (isa) {
#if defined(KOPT_HAVE_AVX2)
    case Isa::Avx2:
      return avx2::kTable;
#endif
#if defined(KOPT_HAVE_NEON)
    case Isa::Neon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

namespace {

Isa select_isa() {
  if (const char* env = std::getenv("KOPT_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
    if (want == "neon" && available(Isa::Neon)) return Isa::Neon;
  }
  if (available(Isa::Avx2)) return Isa::Avx2;
  if (available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const Table& active() {
  static const Table& t = table(active_isa());
  return t;
}

}  // namespace kopt::kernels
