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

#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

std::vector<std::set<int>> conjugacy_orbits(const std::vector<std::vector<int>> &mult) {
    int n = (int)mult.size();
    int e = 0;
    for (int a = 0; a < n; a++) {
        if (mult[a][a] == a) {
            e = a;
        }
    }
    std::vector<int> inv(n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (mult[a][b] == e) {
                inv[a] = b;
            }
        }
    }
    std::vector<std::set<int>> out;
    std::set<int> done;
    for (int g = 0; g < n; g++) {
        if (done.count(g)) {
            continue;
        }
        std::set<int> orbit;
        for (int x = 0; x < n; x++) {
            orbit.insert(mult[mult[x][g]][inv[x]]);
        }
        done.insert(orbit.begin(), orbit.end());
        out.push_back(orbit);
    }
    return out;
}

int centralizer_size(const std::vector<std::vector<int>> &mult, int g) {
    int c = 0;
    for (std::size_t x = 0; x < mult.size(); x++) {
        c += mult[x][g] == mult[g][x];
    }
    return c;
}

}  // namespace oracle

namespace oracle {

Lin identity() {
    return [](const Vec &v) { return v; };
}

Lin scaled(cplx w, Lin a) {
    return [w, a](const Vec &v) {
        Vec out = a(v);
        for (auto &kv : out) kv.second *= w;
        return out;
    };
}

Lin sum(std::vector<Lin> terms) {
    return [terms](const Vec &v) {
        Vec out;
        for (const auto &t : terms) {
            for (const auto &[k, a] : t(v)) out[k] += a;
        }
        return out;
    };
}

Lin compose(Lin a, Lin b) {
    return [a, b](const Vec &v) { return a(b(v)); };
}

namespace {

Lin edge_map(int idx, std::function<int(int)> f) {
    return [idx, f](const Vec &v) {
        Vec out;
        for (const auto &[c, a] : v) {
            int x = f((unsigned char)c[idx]);
            if (x < 0) continue;
            std::string d = c;
            d[idx] = (char)x;
            out[d] += a;
        }
        return out;
    };
}

}  // namespace

Lin edge_L(const qdlab::FiniteGroup &G, int idx, int h) {
    return edge_map(idx, [&G, h](int x) { return G.mul(h, x); });
}

Lin edge_R(const qdlab::FiniteGroup &G, int idx, int h) {
    return edge_map(idx, [&G, h](int x) { return G.mul(x, G.inv(h)); });
}

Lin edge_T(const qdlab::FiniteGroup &G, int idx, int g) {
    return edge_map(idx, [g](int x) { return x == g ? x : -1; });
}

Lin triangle_F(const qdlab::FiniteGroup &G, const qdlab::Region &R, const qdlab::Triangle &t, int h, int g) {
    int idx = R.index(t.e);
    if (t.direct) {
        if (t.e.from == t.s0.v && t.e.to() == t.s1.v) return edge_T(G, idx, g);
        return edge_T(G, idx, G.inv(g));
    }
    if (g != 0) {
        return [](const Vec &) { return Vec{}; };
    }
    auto [a, b] = qdlab::dual_edge(t.e);
    bool fwd = a == t.s0.f && b == t.s1.f;
    bool d0 = t.s0.v == t.e.from;
    if (fwd && d0) return edge_L(G, idx, h);
    if (fwd) return edge_R(G, idx, G.inv(h));
    if (d0) return edge_L(G, idx, G.inv(h));
    return edge_R(G, idx, h);
}

Lin ribbon_F(const qdlab::FiniteGroup &G, const qdlab::Region &R, const qdlab::Ribbon &r, int h, int g, int split) {
    if (r.empty()) {
        if (g == 0) return identity();
        return [](const Vec &) { return Vec{}; };
    }
    if (r.size() == 1) {
        return triangle_F(G, R, r[0], h, g);
    }
    std::size_t p = split > 0 && split < (int)r.size() ? split : 1;
    qdlab::Ribbon r1(r.begin(), r.begin() + p), r2(r.begin() + p, r.end());
    std::vector<Lin> terms;
    for (int k = 0; k < G.order(); k++) {
        if (p == 1 && !r[0].direct && k != 0) continue;  // F_tau^{h,k} vanishes for k != 1
        int hk = G.mul(G.mul(G.inv(k), h), k);
        terms.push_back(compose(ribbon_F(G, R, r1, h, k), ribbon_F(G, R, r2, hk, G.mul(G.inv(k), g))));
    }
    return sum(terms);
}

Vec basis(const std::string &c) {
    return {{c, 1.0}};
}

double distance(const Vec &a, const Vec &b) {
    double d = 0;
    for (const auto &[k, x] : a) {
        auto it = b.find(k);
        d = std::max(d, std::abs(x - (it == b.end() ? cplx(0) : it->second)));
    }
    for (const auto &[k, x] : b) {
        if (!a.count(k)) d = std::max(d, std::abs(x));
    }
    return d;
}

std::vector<std::vector<cplx>> dense(const Lin &op, const qdlab::FiniteGroup &G, const std::vector<int> &edges,
                                     const std::string &background) {
    int N = G.order();
    std::size_t dim = 1;
    for (std::size_t k = 0; k < edges.size(); k++) dim *= N;
    auto config = [&](std::size_t idx) {
        std::string c = background;
        for (int e : edges) {
            c[e] = (char)(idx % N);
            idx /= N;
        }
        return c;
    };
    auto index = [&](const std::string &c) {
        std::size_t idx = 0;
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) idx = idx * N + (unsigned char)c[*it];
        return idx;
    };
    std::vector<std::vector<cplx>> M(dim, std::vector<cplx>(dim));
    for (std::size_t col = 0; col < dim; col++) {
        for (const auto &[c, a] : op(basis(config(col)))) {
            for (std::size_t k = 0; k < c.size(); k++) {
                bool on = std::find(edges.begin(), edges.end(), (int)k) != edges.end();
                if (!on && c[k] != background[k]) throw std::runtime_error("dense: op leaves support");
            }
            M[index(c)][col] += a;
        }
    }
    return M;
}

}  // namespace oracle

namespace testutil {

qdlab::Ribbon random_ribbon(const qdlab::Region &R, std::mt19937 &rng, int length, int sign, int kinds) {
    using namespace qdlab;
    for (int attempt = 0; attempt < 10000; attempt++) {
        Vtx v = R.V[rng() % R.V.size()];
        Site s{v, face_around(v, rng() % 6)};
        Ribbon r;
        std::set<Edge> used;
        int sg = sign;
        while ((int)r.size() < length) {
            std::vector<Triangle> opts;
            auto vs = face_vertices(s.f);
            if (kinds & 1) {
                for (Vtx u : vs) {
                    if (u != s.v) opts.push_back({true, s, {u, s.f}, edge_between(s.v, u)});
                }
            }
            if (kinds & 2) {
                int k = face_index_around(s.v, s.f);
                opts.push_back({false, s, {s.v, face_around(s.v, k + 1)}, edge_between(s.v, s.v + step(k + 1))});
                opts.push_back({false, s, {s.v, face_around(s.v, k - 1)}, edge_between(s.v, s.v + step(k))});
            }
            std::vector<Triangle> ok;
            for (const auto &t : opts) {
                int ts = t.positive() ? 1 : -1;
                if (R.index(t.e) < 0 || used.count(t.e) || (sg != 0 && ts != sg)) continue;
                ok.push_back(t);
            }
            if (ok.empty()) break;
            Triangle t = ok[rng() % ok.size()];
            sg = t.positive() ? 1 : -1;
            used.insert(t.e);
            r.push_back(t);
            s = t.s1;
        }
        if ((int)r.size() == length) {
            validate_ribbon(r);
            return r;
        }
    }
    throw std::runtime_error("random_ribbon: no ribbon found");
}

std::string random_config(const qdlab::Region &R, int order, std::mt19937 &rng) {
    std::string c(R.E.size(), '\0');
    for (auto &x : c) x = (char)(rng() % order);
    return c;
}

}  // namespace testutil

namespace oracle {

namespace {

struct PackProblem {
    const qdlab::FiniteGroup &G;
    const qdlab::Region &R;
    // each face: three (edge index, forward) pairs read counterclockwise, plus the required product
    std::vector<std::array<std::pair<int, bool>, 3>> faces;
    std::vector<int> face_target;
    std::vector<std::pair<int, bool>> path;
    int path_target = 0;

    PackProblem(const qdlab::FiniteGroup &G_, const qdlab::Region &R_, int ci, int fid) : G(G_), R(R_) {
        auto oriented = [&](qdlab::Vtx u, qdlab::Vtx v) {
            qdlab::Edge e = qdlab::edge_between(u, v);
            return std::make_pair(R.index(e), e.from == u);
        };
        for (const auto &f : R.F) {
            auto vs = qdlab::face_vertices(f);
            if (f == R.s0.f) {
                while (vs[0] != R.s0.v) std::rotate(vs.begin(), vs.begin() + 1, vs.end());
            }
            faces.push_back({oriented(vs[0], vs[1]), oriented(vs[1], vs[2]), oriented(vs[2], vs[0])});
            face_target.push_back(f == R.s0.f ? ci : 0);
        }
        for (int i = 0; i <= R.n; i++) {
            path.push_back(oriented(R.s0.v + i * qdlab::step(R.rot), R.s0.v + (i + 1) * qdlab::step(R.rot)));
        }
        path_target = fid;
    }

    int value(const std::string &c, std::pair<int, bool> oe) const {
        int x = (unsigned char)c[oe.first];
        return oe.second ? x : G.inv(x);
    }

    template <class Seq>
    int product(const std::string &c, const Seq &s) const {
        int p = 0;
        for (const auto &oe : s) p = G.mul(p, value(c, oe));
        return p;
    }
};

}  // namespace

std::string pack_check(const qdlab::FiniteGroup &G, const qdlab::Region &R, const std::string &c,
                       const std::vector<int> &b, int ci, int fid) {
    PackProblem P(G, R, ci, fid);
    for (std::size_t k = 0; k < b.size(); k++) {
        if ((unsigned char)c[R.dE_index[k]] != b[k]) return "boundary edge " + std::to_string(k);
    }
    for (std::size_t f = 0; f < P.faces.size(); f++) {
        if (P.product(c, P.faces[f]) != P.face_target[f]) return "face " + qdlab::to_string(R.F[f]);
    }
    if (P.product(c, P.path) != P.path_target) return "path product";
    return "";
}

std::vector<std::string> brute_pack(const qdlab::FiniteGroup &G, const qdlab::Region &R, const std::vector<int> &b,
                                    int ci, int fid, std::size_t limit) {
    PackProblem P(G, R, ci, fid);
    int ne = (int)R.E.size();
    std::string c(ne, 0);
    std::vector<char> fixed(ne, 0);
    for (std::size_t k = 0; k < b.size(); k++) {
        c[R.dE_index[k]] = (char)b[k];
        fixed[R.dE_index[k]] = 1;
    }
    // greedy order: always take the free edge touching the most nearly complete faces
    std::vector<int> order;
    std::vector<char> placed = fixed;
    for (int step = 0; step < ne; step++) {
        int best = -1, score = -1;
        for (int e = 0; e < ne; e++) {
            if (placed[e]) continue;
            int s = 0;
            for (const auto &f : P.faces) {
                bool has = false;
                int known = 0;
                for (const auto &oe : f) {
                    has = has || oe.first == e;
                    known += placed[oe.first];
                }
                if (has) s = std::max(s, 1 + known);
            }
            if (s > score) score = s, best = e;
        }
        if (best < 0) break;
        placed[best] = 1;
        order.push_back(best);
    }
    // constraints become checkable right after the last of their edges is assigned
    std::vector<int> pos(ne, -1);
    for (std::size_t k = 0; k < order.size(); k++) pos[order[k]] = (int)k;
    std::vector<std::vector<int>> check_faces(order.size() + 1);
    for (std::size_t f = 0; f < P.faces.size(); f++) {
        int last = -1;
        for (const auto &oe : P.faces[f]) last = std::max(last, pos[oe.first]);
        check_faces[last + 1].push_back((int)f);
    }
    int path_last = -1;
    for (const auto &oe : P.path) path_last = std::max(path_last, pos[oe.first]);

    std::vector<std::string> out;
    auto ok = [&](int depth) {
        for (int f : check_faces[depth]) {
            if (P.product(c, P.faces[f]) != P.face_target[f]) return false;
        }
        return depth != path_last + 1 || P.product(c, P.path) == P.path_target;
    };
    std::function<void(int)> dfs = [&](int depth) {
        if (!ok(depth)) return;
        if (depth == (int)order.size()) {
            if (out.size() >= limit) throw std::runtime_error("brute_pack limit exceeded");
            out.push_back(c);
            return;
        }
        for (int g = 0; g < G.order(); g++) {
            c[order[depth]] = (char)g;
            dfs(depth + 1);
        }
    };
    dfs(0);
    return out;
}

}  // namespace oracle
