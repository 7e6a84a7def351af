// Copyright 2026 The qdlab Authors
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

#ifndef QDLAB_SRC_CATALOG_DETAIL_HPP
#define QDLAB_SRC_CATALOG_DETAIL_HPP

#include <array>
#include <vector>

namespace qdlab::detail {

// Element orderings shared by the catalog tables and the shipped 2-dim irreps.

// S3: permutations of {0,1,2} in lexicographic order; p[x] is the image of x.
std::vector<std::array<int, 3>> s3_perms();

// D4: index = 4*f + k for r^k s^f.
inline int d4_index(int k, int f) {
    return 4 * f + ((k % 4) + 4) % 4;
}

// Q8: index = 2*u + s for (-1)^s * unit[u], units 1, i, j, k.
inline int q8_index(int unit, int sign) {
    return 2 * unit + sign;
}

}  // namespace qdlab::detail

#endif
