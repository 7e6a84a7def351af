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

#ifndef QDLAB_STATE_HPP
#define QDLAB_STATE_HPP

#include <memory>
#include <vector>

#include "qdlab/ops.hpp"

namespace qdlab {

/// Sparse state stored modulo gauge averaging on a frame W of interior vertices.
///
/// The stored pair (alpha, a) stands for a |G|^{-|W|/2} sum_{g in G^W} U_g |alpha>, with alpha the
/// canonical representative of its orbit (every edge of a BFS forest grown from the vertices
/// outside W carries the identity). An empty frame is an ordinary sparse vector.
class State {
   public:
    State() = default;
    State(Ctx ctx, std::vector<int> frame);

    static State basis(const Ctx &ctx, const Config &c, std::vector<int> frame = {});
    /// Vertex indices of V minus v0, the largest frame used in practice.
    static std::vector<int> bulk_frame(const Ctx &ctx);

    const Ctx &ctx() const {
        return ctx_;
    }
    const std::vector<int> &frame() const {
        return frame_;
    }
    const Amplitudes &terms() const {
        return amps_;
    }
    std::size_t size() const {
        return amps_.size();
    }

    /// Adds a * (orbit state of c); c need not be canonical.
    void add(const Config &c, cplx a);
    Config canonical(const Config &c) const;

    State restricted(const std::vector<int> &frame) const;
    /// Projects onto gauge invariance at the vertices of `frame` missing from ours and compresses
    /// over `frame`, which must contain the current frame.
    State projected(std::vector<int> frame) const;
    State apply(const Op &op) const;
    cplx inner(const State &other) const;  // <this|other>
    double norm() const;
    State normalized() const;
    State operator+(const State &o) const;
    State operator-(const State &o) const;
    State operator*(cplx s) const;
    /// Distance in the 2-norm.
    double distance(const State &o) const;
    /// Full expansion over the frame; intended for small frames only.
    Amplitudes expanded() const;

   private:
    struct Tree;
    std::shared_ptr<const Tree> tree() const;
    void prune();

    Ctx ctx_;
    std::vector<int> frame_;
    Amplitudes amps_;
    mutable std::shared_ptr<const Tree> tree_;
};

std::vector<int> frame_without(const Ctx &ctx, const std::vector<int> &frame, const std::vector<Vtx> &remove);
std::vector<int> frame_intersection(const std::vector<int> &a, const std::vector<int> &b);

/// Applies the gauge transformation {g_v} (vertex index -> element) to a configuration.
Config gauge_act(const Ctx &ctx, const Config &c, const std::vector<std::pair<int, int>> &g);

}  // namespace qdlab

#endif
