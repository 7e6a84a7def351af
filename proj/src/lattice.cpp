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

#include "qdlab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "qdlab/errors.hpp"

namespace qdlab {

namespace {

const Vtx kSteps[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
const int kCanonicalStep[3] = {0, 1, 5};

int mod6(int k) {
    return ((k % 6) + 6) % 6;
}

Face face_from_vertices(Vtx p, Vtx q, Vtx r) {
    std::array<Vtx, 3> vs{p, q, r};
    for (int x = 0; x < 3; x++) {
        for (int y = 0; y < 3; y++) {
            if (x == y || vs[x].b != vs[y].b || vs[y].a != vs[x].a + 1) {
                continue;
            }
            Vtx third = vs[3 - x - y];
            if (third.b == vs[x].b + 1) {
                return {vs[x].a, vs[x].b, true};
            }
            return {vs[x].a, vs[x].b - 1, false};
        }
    }
    throw IdentityViolation("vertices do not bound a face");
}

}  // namespace

Vtx step(int k) {
    return kSteps[mod6(k)];
}

int step_index(Vtx u, Vtx v) {
    Vtx d = v - u;
    for (int k = 0; k < 6; k++) {
        if (kSteps[k] == d) {
            return k;
        }
    }
    return -1;
}

int hex_dist(Vtx u, Vtx v) {
    Vtx d = v - u;
    return (std::abs(d.a) + std::abs(d.b) + std::abs(d.a + d.b)) / 2;
}

std::array<Vtx, 3> face_vertices(const Face &f) {
    if (f.up) {
        return {Vtx{f.a, f.b}, Vtx{f.a + 1, f.b}, Vtx{f.a, f.b + 1}};
    }
    return {Vtx{f.a + 1, f.b}, Vtx{f.a + 1, f.b + 1}, Vtx{f.a, f.b + 1}};
}

Face face_around(Vtx v, int k) {
    return face_from_vertices(v, v + step(k), v + step(k + 1));
}

int face_index_around(Vtx v, const Face &f) {
    for (int k = 0; k < 6; k++) {
        if (face_around(v, k) == f) {
            return k;
        }
    }
    return -1;
}

Vtx Edge::to() const {
    return from + step(kCanonicalStep[dir]);
}

Edge edge_between(Vtx u, Vtx v) {
    int k = step_index(u, v);
    if (k < 0) {
        throw IdentityViolation("vertices " + to_string(u) + " and " + to_string(v) + " are not adjacent");
    }
    for (int d = 0; d < 3; d++) {
        if (kCanonicalStep[d] == k) {
            return {u, d};
        }
    }
    return edge_between(v, u);
}

std::array<Edge, 3> face_edges(const Face &f) {
    auto vs = face_vertices(f);
    return {edge_between(vs[0], vs[1]), edge_between(vs[1], vs[2]), edge_between(vs[2], vs[0])};
}

Face face_left(Vtx u, Vtx v) {
    return face_around(u, step_index(u, v));
}

Face face_right(Vtx u, Vtx v) {
    return face_around(u, step_index(u, v) - 1);
}

std::pair<Face, Face> dual_edge(const Edge &e) {
    return {face_right(e.from, e.to()), face_left(e.from, e.to())};
}

bool Triangle::positive() const {
    if (direct) {
        return face_left(s0.v, s1.v) == s0.f;
    }
    int k0 = face_index_around(s0.v, s0.f);
    int k1 = face_index_around(s0.v, s1.f);
    return mod6(k0 - 1) == k1;
}

std::string to_string(const Vtx &v) {
    return "(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

std::string to_string(const Face &f) {
    return std::string(f.up ? "up" : "down") + to_string(Vtx{f.a, f.b});
}

std::string to_string(const Edge &e) {
    return to_string(e.from) + "->" + to_string(e.to());
}

std::string to_string(const Site &s) {
    return "[" + to_string(s.v) + " " + to_string(s.f) + "]";
}

std::string to_string(const Triangle &t) {
    return std::string(t.direct ? "direct " : "dual ") + to_string(t.s0) + " " + to_string(t.s1) + " " + to_string(t.e);
}

void validate_ribbon(const Ribbon &r) {
    std::set<Edge> seen;
    int sign = 0;
    for (std::size_t k = 0; k < r.size(); k++) {
        const Triangle &t = r[k];
        auto fail = [&](const std::string &why) {
            throw IdentityViolation("ribbon invariant: triangle " + std::to_string(k) + " " + to_string(t) + ": " + why);
        };
        if (face_index_around(t.s0.v, t.s0.f) < 0 || face_index_around(t.s1.v, t.s1.f) < 0) {
            fail("site vertex not on its face");
        }
        if (t.direct) {
            if (t.s0.f != t.s1.f) fail("direct triangle with two faces");
            if (step_index(t.s0.v, t.s1.v) < 0 || edge_between(t.s0.v, t.s1.v) != t.e) fail("edge mismatch");
        } else {
            if (t.s0.v != t.s1.v) fail("dual triangle with two vertices");
            auto d = dual_edge(t.e);
            if (!((d.first == t.s0.f && d.second == t.s1.f) || (d.first == t.s1.f && d.second == t.s0.f))) {
                fail("dual edge does not join the faces");
            }
            if (t.e.from != t.s0.v && t.e.to() != t.s0.v) fail("edge not incident to vertex");
        }
        if (k > 0 && r[k - 1].s1 != t.s0) fail("not composable");
        if (!seen.insert(t.e).second) fail("edge used twice");
        int s = t.positive() ? 1 : -1;
        if (sign != 0 && s != sign) fail("mixed orientation");
        sign = s;
    }
}

Ribbon reversed(const Ribbon &r) {
    Ribbon out;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        out.push_back(it->reversed());
    }
    return out;
}

std::vector<OEdge> direct_path(const Ribbon &r) {
    std::vector<OEdge> out;
    for (const auto &t : r) {
        if (t.direct) {
            out.push_back(t.oriented());
        }
    }
    return out;
}

bool is_closed(const Ribbon &r) {
    return !r.empty() && r.front().s0 == r.back().s1;
}

std::vector<Edge> support(const Ribbon &r) {
    std::vector<Edge> out;
    for (const auto &t : r) {
        out.push_back(t.e);
    }
    return out;
}

Ribbon rho_triangle(const Site &s) {
    auto vs = face_vertices(s.f);
    int k = (int)(std::find(vs.begin(), vs.end(), s.v) - vs.begin());
    Ribbon r;
    for (int t = 0; t < 3; t++) {
        Vtx a = vs[(k + t) % 3], b = vs[(k + t + 1) % 3];
        r.push_back({true, {a, s.f}, {b, s.f}, edge_between(a, b)});
    }
    return r;
}

Ribbon rho_star(const Site &s) {
    int k = face_index_around(s.v, s.f);
    Ribbon r;
    for (int t = 0; t < 6; t++) {
        Face f0 = face_around(s.v, k + t), f1 = face_around(s.v, k + t + 1);
        r.push_back({false, {s.v, f0}, {s.v, f1}, edge_between(s.v, s.v + step(k + t + 1))});
    }
    return r;
}

Ribbon clockwise_turn(Vtx v, const Face &from, const Face &to) {
    int k = face_index_around(v, from);
    int target = face_index_around(v, to);
    if (k < 0 || target < 0) {
        throw IdentityViolation("clockwise turn: faces not around " + to_string(v));
    }
    Ribbon r;
    while (k != target) {
        Face f0 = face_around(v, k), f1 = face_around(v, k - 1);
        r.push_back({false, {v, f0}, {v, f1}, edge_between(v, v + step(k))});
        k = mod6(k - 1);
    }
    return r;
}

Ribbon positive_ribbon(const Site &start, const std::vector<Vtx> &path, const Face *close_at) {
    if (path.empty() || path[0] != start.v) {
        throw IdentityViolation("positive ribbon: path must start at the site vertex");
    }
    Ribbon r;
    Face cur = start.f;
    for (std::size_t k = 0; k + 1 < path.size(); k++) {
        Face next = face_left(path[k], path[k + 1]);
        for (auto &t : clockwise_turn(path[k], cur, next)) {
            r.push_back(t);
        }
        r.push_back({true, {path[k], next}, {path[k + 1], next}, edge_between(path[k], path[k + 1])});
        cur = next;
    }
    if (close_at) {
        for (auto &t : clockwise_turn(path.back(), cur, *close_at)) {
            r.push_back(t);
        }
    }
    validate_ribbon(r);
    return r;
}

std::uint64_t vkey(Vtx v) {
    return (std::uint64_t(std::uint32_t(v.a + (1 << 20))) << 32) | std::uint32_t(v.b + (1 << 20));
}

std::uint64_t ekey(const Edge &e) {
    return vkey(e.from) * 4 + e.dir;
}

Site standard_site() {
    return rotated_site(1);
}

Site rotated_site(int k) {
    return {{0, 0}, face_around({0, 0}, k)};
}

int Region::index(const Edge &e) const {
    auto it = edge_map_.find(ekey(e));
    return it == edge_map_.end() ? -1 : it->second;
}

int Region::vertex_index(Vtx v) const {
    auto it = vert_map_.find(vkey(v));
    return it == vert_map_.end() ? -1 : it->second;
}

Vtx Region::at(int x, int y) const {
    return s0.v + x * step(rot) + y * step(rot + 1);
}

std::vector<int> Region::edge_indices(const std::vector<Edge> &es) const {
    std::vector<int> out;
    for (const auto &e : es) {
        int k = index(e);
        if (k < 0) {
            throw IdentityViolation("edge " + to_string(e) + " outside region");
        }
        out.push_back(k);
    }
    return out;
}

std::vector<int> Region::inner_edges(int m) const {
    std::set<int> out;
    for (const auto &f : F) {
        bool hit = false;
        for (const auto &v : face_vertices(f)) {
            hit = hit || hex_dist(v, s0.v) <= m;
        }
        if (hit) {
            for (const auto &e : face_edges(f)) {
                out.insert(index(e));
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<int> Region::incident(Vtx v) const {
    std::vector<int> out;
    for (int k = 0; k < 6; k++) {
        int i = index(edge_between(v, v + step(k)));
        if (i >= 0) {
            out.push_back(i);
        }
    }
    return out;
}

Region build_region(const Site &s0, int n) {
    if (n < 1) {
        throw InputError("region radius must be >= 1");
    }
    int k0 = face_index_around(s0.v, s0.f);
    if (k0 < 0) {
        throw InputError("site face does not contain the site vertex");
    }
    Region R;
    R.s0 = s0;
    R.n = n;
    R.rot = ((k0 - 1) % 6 + 6) % 6;

    int box = n + 3;
    for (int a = -box; a <= box; a++) {
        for (int b = -box; b <= box; b++) {
            Vtx v = s0.v + Vtx{a, b};
            int d = hex_dist(v, s0.v);
            if (d <= n) {
                R.V.push_back(v);
                if (d > 0) {
                    R.Vdot.push_back(v);
                }
            } else if (d == n + 1) {
                R.dV.push_back(v);
            }
        }
    }
    std::map<Face, int> fset;
    std::map<Edge, int> ecount;
    for (int a = -box; a <= box; a++) {
        for (int b = -box; b <= box; b++) {
            for (bool up : {true, false}) {
                Face f{s0.v.a + a, s0.v.b + b, up};
                bool hit = false;
                for (const auto &v : face_vertices(f)) {
                    hit = hit || hex_dist(v, s0.v) <= n;
                }
                if (hit) {
                    fset[f] = 1;
                    for (const auto &e : face_edges(f)) {
                        ecount[e]++;
                    }
                }
            }
        }
    }
    for (const auto &[f, _] : fset) {
        R.F.push_back(f);
        if (f != s0.f) {
            R.Fdot.push_back(f);
        }
    }
    for (const auto &[e, c] : ecount) {
        R.edge_map_[ekey(e)] = (int)R.E.size();
        R.E.push_back(e);
    }
    R.verts_ = R.V;
    R.verts_.insert(R.verts_.end(), R.dV.begin(), R.dV.end());
    for (std::size_t k = 0; k < R.verts_.size(); k++) {
        R.vert_map_[vkey(R.verts_[k])] = (int)k;
    }

    std::vector<Vtx> fid;
    for (int i = 0; i <= n + 1; i++) {
        fid.push_back(R.at(i, 0));
    }
    R.fiducial = positive_ribbon(s0, fid);
    R.sn = R.fiducial.back().s1;

    std::vector<Vtx> ring;
    int rad = n + 1;
    for (int side = 0; side < 6; side++) {
        Vtx corner = s0.v + rad * step(R.rot + side);
        for (int t = 0; t < rad; t++) {
            ring.push_back(corner + t * step(R.rot + side + 2));
        }
    }
    ring.push_back(ring.front());
    R.boundary = positive_ribbon(R.sn, ring, &R.sn.f);

    std::set<Edge> boundary_set;
    for (const auto &[e, c] : ecount) {
        if (c == 1) {
            boundary_set.insert(e);
        }
    }
    for (const auto &oe : direct_path(R.boundary)) {
        Edge e = edge_between(oe.from, oe.to);
        if (!boundary_set.count(e)) {
            throw IdentityViolation("boundary ribbon leaves the region boundary at " + to_string(e));
        }
        R.dE.push_back(e);
        R.dE_index.push_back(R.index(e));
    }
    if (R.dE.size() != boundary_set.size()) {
        throw IdentityViolation("boundary ribbon does not cover the region boundary");
    }
    for (const auto &t : R.fiducial) {
        if (boundary_set.count(t.e)) {
            throw IdentityViolation("fiducial ribbon touches the region boundary");
        }
    }
    for (const auto &t : R.boundary) {
        if (R.index(t.e) < 0) {
            throw IdentityViolation("boundary ribbon leaves the region");
        }
    }
    return R;
}

}  // namespace qdlab
