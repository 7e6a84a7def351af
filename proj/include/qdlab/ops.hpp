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

#ifndef QDLAB_OPS_HPP
#define QDLAB_OPS_HPP

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdlab/irrep.hpp"
#include "qdlab/lattice.hpp"

namespace qdlab {

/// One group element index per region edge, in Region::E order.
using Config = std::string;
using Amplitudes = std::unordered_map<Config, cplx>;

constexpr double kPrune = 1e-14;

/// Shared, immutable inputs every operator is compiled against.
struct Ctx {
    std::shared_ptr<const QuantumDouble> qd;
    std::shared_ptr<const Region> region;

    const FiniteGroup &G() const {
        return qd->group();
    }
    const Region &R() const {
        return *region;
    }
    static Ctx make(const QuantumDouble &qd, const Region &region);
};

/// A partial map on basis configurations with a scalar weight.
class Monomial {
   public:
    virtual ~Monomial() = default;
    /// Maps c in place and multiplies w; returns false when the image is zero.
    virtual bool apply(Config &c, cplx &w) const = 0;
    virtual std::shared_ptr<const Monomial> adjoint() const = 0;
    virtual std::vector<int> support() const = 0;
    /// Vertices whose gauge transformations may fail to commute with this map.
    virtual std::vector<Vtx> exceptional() const = 0;
    virtual std::string describe() const = 0;
};

/// Immutable operator expression: leaf, weighted sum, or product.
class Op {
   public:
    Op();  // zero
    static Op zero();
    static Op identity();
    static Op leaf(std::shared_ptr<const Monomial> m);
    static Op sum(const std::vector<std::pair<cplx, Op>> &terms);
    /// factors[0] * factors[1] * ...; the last factor acts first.
    static Op product(const std::vector<Op> &factors);

    Op operator+(const Op &o) const;
    Op operator-(const Op &o) const;
    Op operator*(const Op &o) const;
    Op operator*(cplx s) const;
    Op adjoint() const;
    /// Same operator, declared to commute with every gauge transformation.
    Op gauge_invariant() const;

    const std::vector<int> &support() const;
    const std::vector<Vtx> &exceptional() const;
    std::string describe() const;
    std::size_t leaf_count() const;

    /// Adds coef * Op|c> into out.
    void apply_basis(const Config &c, cplx coef, Amplitudes &out) const;
    Amplitudes apply_basis(const Config &c) const;

    struct Node;

   private:
    explicit Op(std::shared_ptr<const Node> n) : node_(std::move(n)) {
    }
    std::shared_ptr<const Node> node_;
};

inline Op operator*(cplx s, const Op &o) {
    return o * s;
}

// Edge operators: L^h |g> = |hg>, R^h |g> = |g h^-1>, T^g = |g><g|.
Op edge_L(const Ctx &ctx, const Edge &e, int h);
Op edge_R(const Ctx &ctx, const Edge &e, int h);
Op edge_T(const Ctx &ctx, const Edge &e, int g);

/// L^h on a dual triangle, T^g on a direct one; kind mismatch throws InputError.
Op triangle_L(const Ctx &ctx, const Triangle &t, int h);
Op triangle_T(const Ctx &ctx, const Triangle &t, int g);

/// F^{h,g} on a ribbon via the sequential flux walk.
Op ribbon_F(const Ctx &ctx, const Ribbon &r, int h, int g);
Op ribbon_T(const Ctx &ctx, const Ribbon &r, int g);
Op ribbon_L(const Ctx &ctx, const Ribbon &r, int h);

Op site_A(const Ctx &ctx, const Site &s, int h);
Op site_B(const Ctx &ctx, const Site &s, int g);
Op vertex_A(const Ctx &ctx, Vtx v);
Op face_B(const Ctx &ctx, const Face &f);

/// Labels u = (i, j) in I_RC.
struct RCLabel {
    int i = 0;
    int j = 0;
    auto operator<=>(const RCLabel &) const = default;
};
std::vector<RCLabel> site_labels(const QuantumDouble &qd, int cls, int irrep);

Op ribbon_F_RC(const Ctx &ctx, const Ribbon &r, int cls, int irrep, RCLabel u, RCLabel v);
Op wigner_D(const Ctx &ctx, const Site &s, int cls, int irrep);
Op wigner_Du(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u);
Op gauge_A_RC(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u2, RCLabel u1);
Op charge_detector(const Ctx &ctx, const Ribbon &sigma, int cls, int irrep);

/// U[{g_v}], acting as a'_e = g_{d0 e} a_e g_{d1 e}^-1.
Op gauge_unitary(const Ctx &ctx, const std::map<Vtx, int> &g);
/// b holds one element per boundary edge in beta order, on canonical edges.
Op boundary_projector(const Ctx &ctx, const std::vector<int> &b);

/// Flux of a configuration through a ribbon's direct path.
int flux(const Ctx &ctx, const Config &c, const Ribbon &r);
int oriented_value(const Ctx &ctx, const Config &c, Vtx from, Vtx to);

Config identity_config(const Ctx &ctx);

}  // namespace qdlab

#endif
