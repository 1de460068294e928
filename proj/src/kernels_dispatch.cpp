// Copyright 2026 The gimcodec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <cstring>

#include "gim/kernels.hpp"

namespace gim::kernels {

#if !defined(GIMCODEC_BUILD_AVX2)
const Kernels* avx2() { return nullptr; }
#endif

const Kernels& active() {
  static const Kernels* selected = [] {
    const char* force = std::getenv("GIM_KERNELS");
    if (force && std::strcmp(force, "scalar") == 0) return &scalar();
    if (const Kernels* k = avx2()) return k;
    return &scalar();
  }();
  return *selected;
}

}  // namespace gim::kernels
