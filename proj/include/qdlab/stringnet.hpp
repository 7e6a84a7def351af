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

#ifndef QDLAB_STRINGNET_HPP
#define QDLAB_STRINGNET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdlab/ops.hpp"
#include "qdlab/state.hpp"

namespace qdlab {

/// Boundary condition: one element per boundary edge, in boundary-ribbon order.
using Boundary = std::vector<int>;

Boundary boundary_of(const Ctx &ctx, const Config &c);
Config with_boundary(const Ctx &ctx, Config c, const Boundary &b);
int boundary_flux(const Ctx &ctx, const Boundary &b);
/// i(b) for class cls, or -1 when b is not compatible with it.
int boundary_label(const Ctx &ctx, const Boundary &b, int cls);
/// Boundary whose first edge carries c_i and all others the identity.
Boundary simple_boundary(const Ctx &ctx, int cls, int i);

struct PackLabel {
    int cls = 0;
    int i = 0;
    Boundary b;
    int m = 0;  // position in N_C
};

/// Empty when c is in pack^{C;ib}(m), otherwise the first violated constraint.
std::string pack_violation(const Ctx &ctx, const PackLabel &l, const Config &c);

/// One member of pack^{C;ib}(m). ordering 0 peels faces outward from f0, 1 inward.
Config seed_config(const Ctx &ctx, const PackLabel &l, int ordering = 0);

/// The whole bulk gauge orbit of the seed; throws if it has more than `limit` members.
std::vector<Config> enumerate_pack(const Ctx &ctx, const PackLabel &l, std::size_t limit = 1u << 20);

/// Uniform superposition over pack^{C;ib}(m).
State eta_m(const Ctx &ctx, const PackLabel &l);

struct BoundaryLabel {
    Boundary b;
    int jp = 0;
};

/// eta^{RC;uv} with u = (i, j) and v = (b, j').
State eta_uv(const Ctx &ctx, int cls, int irrep, RCLabel u, const BoundaryLabel &v);

/// Trivial boundary first when compatible, then simple boundaries and gauge-rotated copies.
std::vector<Boundary> boundary_family(const Ctx &ctx, int cls, std::size_t count, std::uint64_t seed);

/// U_{b2 b1}: keeps E_{n-1}, sets the boundary to b2 and re-solves the outer annulus.
Op boundary_map(const Ctx &ctx, const Boundary &b2, const Boundary &b1);

/// The label changer acting on boundary labels, built from the boundary ribbon and U_{b2 b1}.
Op boundary_label_changer(const Ctx &ctx, int cls, int irrep, const BoundaryLabel &v2, const BoundaryLabel &v1);

/// A_{s}^{RC;u2u1} (the site label changer); same as gauge_A_RC.
Op label_changer(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u2, RCLabel u1);

}  // namespace qdlab

#endif
