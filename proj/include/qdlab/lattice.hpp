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

#ifndef QDLAB_LATTICE_HPP
#define QDLAB_LATTICE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdlab {

/// Vertex in the global basis l1 = (1,0), l2 = (1/2, sqrt(3)/2).
struct Vtx {
    int a = 0;
    int b = 0;
    auto operator<=>(const Vtx &) const = default;
};

inline Vtx operator+(Vtx u, Vtx v) {
    return {u.a + v.a, u.b + v.b};
}
inline Vtx operator-(Vtx u, Vtx v) {
    return {u.a - v.a, u.b - v.b};
}
inline Vtx operator*(int k, Vtx v) {
    return {k * v.a, k * v.b};
}

/// Unit steps at angles 0, 60, ..., 300 degrees.
Vtx step(int k);
/// k with v - u = step(k), or -1.
int step_index(Vtx u, Vtx v);
int hex_dist(Vtx u, Vtx v);

/// up(a,b) = {(a,b),(a+1,b),(a,b+1)}; down(a,b) = {(a+1,b),(a+1,b+1),(a,b+1)}.
struct Face {
    int a = 0;
    int b = 0;
    bool up = true;
    auto operator<=>(const Face &) const = default;
};

std::array<Vtx, 3> face_vertices(const Face &f);  // counterclockwise
/// F_k(v): the face spanned by steps k and k+1 at v.
Face face_around(Vtx v, int k);
/// k with face_around(v, k) == f, or -1.
int face_index_around(Vtx v, const Face &f);

/// Canonical left-to-right edge: from -> from + step({0,1,5}[dir]).
struct Edge {
    Vtx from;
    int dir = 0;
    auto operator<=>(const Edge &) const = default;
    Vtx to() const;
};

struct OEdge {
    Vtx from;
    Vtx to;
    auto operator<=>(const OEdge &) const = default;
    OEdge reversed() const {
        return {to, from};
    }
};

Edge edge_between(Vtx u, Vtx v);
std::array<Edge, 3> face_edges(const Face &f);
Face face_left(Vtx u, Vtx v);
Face face_right(Vtx u, Vtx v);
/// e* = (f0, f1) crossing e from right to left.
std::pair<Face, Face> dual_edge(const Edge &e);

struct Site {
    Vtx v;
    Face f;
    auto operator<=>(const Site &) const = default;
};

struct Triangle {
    bool direct = true;
    Site s0;
    Site s1;
    Edge e;
    auto operator<=>(const Triangle &) const = default;

    bool positive() const;
    Triangle reversed() const {
        return {direct, s1, s0, e};
    }
    /// Oriented edge (v(s0), v(s1)) for direct triangles.
    OEdge oriented() const {
        return {s0.v, s1.v};
    }
};

using Ribbon = std::vector<Triangle>;

/// Throws IdentityViolation describing the first broken ribbon invariant.
void validate_ribbon(const Ribbon &r);
Ribbon reversed(const Ribbon &r);
std::vector<OEdge> direct_path(const Ribbon &r);
bool is_closed(const Ribbon &r);
std::vector<Edge> support(const Ribbon &r);

Ribbon rho_triangle(const Site &s);
Ribbon rho_star(const Site &s);

/// The positive ribbon from `start` whose direct path visits `path`
/// (path[0] == start.v). If `close_at` is given, trailing dual triangles
/// rotate to that face.
Ribbon positive_ribbon(const Site &start, const std::vector<Vtx> &path, const Face *close_at = nullptr);
/// Clockwise dual triangles at v from face `from` to face `to`.
Ribbon clockwise_turn(Vtx v, const Face &from, const Face &to);

std::string to_string(const Vtx &v);
std::string to_string(const Face &f);
std::string to_string(const Edge &e);
std::string to_string(const Site &s);
std::string to_string(const Triangle &t);

struct Region {
    Site s0;
    int n = 0;
    int rot = 0;  // frame l1 = step(rot), l2 = step(rot + 1)

    std::vector<Vtx> V;       // dist <= n
    std::vector<Vtx> Vdot;    // V minus v0
    std::vector<Vtx> dV;      // dist == n + 1
    std::vector<Face> F;
    std::vector<Face> Fdot;
    std::vector<Edge> E;      // defines the element order of configurations
    std::vector<Edge> dE;     // beta order
    std::vector<int> dE_index;

    Ribbon fiducial;
    Ribbon boundary;
    Site sn;

    int index(const Edge &e) const;
    bool contains(const Edge &e) const {
        return index(e) >= 0;
    }
    int vertex_index(Vtx v) const;  // into V ∪ dV ordering of vertices()
    const std::vector<Vtx> &vertices() const {
        return verts_;
    }
    /// Frame coordinates (x, y) relative to v0.
    Vtx at(int x, int y) const;
    /// E_m for m < n as edge indices.
    std::vector<int> inner_edges(int m) const;
    std::vector<int> edge_indices(const std::vector<Edge> &es) const;
    std::vector<int> incident(Vtx v) const;

    std::unordered_map<std::uint64_t, int> edge_map_;
    std::unordered_map<std::uint64_t, int> vert_map_;
    std::vector<Vtx> verts_;
};

Site standard_site();
/// Sites around v0 other than the standard one, for alternative conventions.
Site rotated_site(int k);
Region build_region(const Site &s0, int n);

std::uint64_t vkey(Vtx v);
std::uint64_t ekey(const Edge &e);

}  // namespace qdlab

#endif
