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

#include "qdlab/stringnet.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "qdlab/errors.hpp"

namespace qdlab {

namespace {

int oval(const Ctx &ctx, const Config &c, Vtx from, Vtx to) {
    return oriented_value(ctx, c, from, to);
}

void set_oval(const Ctx &ctx, Config &c, Vtx from, Vtx to, int x) {
    Edge e = edge_between(from, to);
    c[ctx.R().index(e)] = (char)(e.from == from ? x : ctx.G().inv(x));
}

/// Counterclockwise vertices of f starting at `start` (or at its first vertex).
std::array<Vtx, 3> loop_from(const Face &f, const Vtx *start) {
    auto vs = face_vertices(f);
    if (start) {
        while (vs[0] != *start) std::rotate(vs.begin(), vs.begin() + 1, vs.end());
    }
    return vs;
}

int face_flux(const Ctx &ctx, const Config &c, const Face &f, const Vtx *start) {
    auto vs = loop_from(f, start);
    const FiniteGroup &G = ctx.G();
    return G.mul(G.mul(oval(ctx, c, vs[0], vs[1]), oval(ctx, c, vs[1], vs[2])), oval(ctx, c, vs[2], vs[0]));
}

/// Sets the single unknown edge of f so that the flux read from `start` is `target`.
void solve_face(const Ctx &ctx, Config &c, const Face &f, const Vtx *start, int target, int unknown) {
    const FiniteGroup &G = ctx.G();
    auto vs = loop_from(f, start);
    int pos = -1;
    for (int k = 0; k < 3; k++) {
        if (ctx.R().index(edge_between(vs[k], vs[(k + 1) % 3])) == unknown) pos = k;
    }
    int pre = 0, post = 0;
    for (int k = 0; k < pos; k++) pre = G.mul(pre, oval(ctx, c, vs[k], vs[k + 1]));
    for (int k = pos + 1; k < 3; k++) post = G.mul(post, oval(ctx, c, vs[k], vs[(k + 1) % 3]));
    int x = G.mul(G.mul(G.inv(pre), target), G.inv(post));
    set_oval(ctx, c, vs[pos], vs[(pos + 1) % 3], x);
}

std::vector<Vtx> fiducial_path(const Region &R) {
    std::vector<Vtx> p;
    for (int k = 0; k <= R.n + 1; k++) p.push_back(R.at(k, 0));
    return p;
}

int fiducial_target(const Ctx &ctx, const PackLabel &l) {
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.G().classes().at(l.cls);
    int ib = boundary_label(ctx, l.b, l.cls);
    return G.mul(G.mul(C.q[l.i], C.centralizer[l.m]), G.inv(C.q[ib]));
}

void check_label(const Ctx &ctx, const PackLabel &l) {
    const auto &classes = ctx.G().classes();
    if (l.cls < 0 || l.cls >= (int)classes.size()) throw InputError("class index out of range");
    const ConjugacyClass &C = classes[l.cls];
    if (l.i < 0 || l.i >= C.size() || l.m < 0 || l.m >= C.centralizer_order()) {
        throw InputError("pack label out of range");
    }
    if (l.b.size() != ctx.R().dE.size()) throw InputError("boundary condition has wrong length");
    for (int x : l.b) {
        if (x < 0 || x >= ctx.G().order()) throw InputError("boundary value out of range");
    }
    if (boundary_label(ctx, l.b, l.cls) < 0) {
        throw InputError("incompatible boundary: boundary flux is not in class " + std::to_string(l.cls));
    }
}

}  // namespace

Boundary boundary_of(const Ctx &ctx, const Config &c) {
    Boundary b;
    for (int e : ctx.R().dE_index) b.push_back((unsigned char)c[e]);
    return b;
}

Config with_boundary(const Ctx &ctx, Config c, const Boundary &b) {
    if (b.size() != ctx.R().dE.size()) throw InputError("boundary condition has wrong length");
    for (std::size_t k = 0; k < b.size(); k++) c[ctx.R().dE_index[k]] = (char)b[k];
    return c;
}

int boundary_flux(const Ctx &ctx, const Boundary &b) {
    return flux(ctx, with_boundary(ctx, identity_config(ctx), b), ctx.R().boundary);
}

int boundary_label(const Ctx &ctx, const Boundary &b, int cls) {
    return ctx.G().classes().at(cls).label[boundary_flux(ctx, b)];
}

Boundary simple_boundary(const Ctx &ctx, int cls, int i) {
    const ConjugacyClass &C = ctx.G().classes().at(cls);
    Config c = identity_config(ctx);
    OEdge first = direct_path(ctx.R().boundary).at(0);
    set_oval(ctx, c, first.from, first.to, C.elements.at(i));
    return boundary_of(ctx, c);
}

std::string pack_violation(const Ctx &ctx, const PackLabel &l, const Config &c) {
    const Region &R = ctx.R();
    const ConjugacyClass &C = ctx.G().classes().at(l.cls);
    for (const Face &f : R.Fdot) {
        if (face_flux(ctx, c, f, nullptr) != 0) return "face " + to_string(f) + " not flat";
    }
    if (face_flux(ctx, c, R.s0.f, &R.s0.v) != C.elements[l.i]) return "flux at origin site";
    if (boundary_of(ctx, c) != l.b) return "boundary condition";
    if (flux(ctx, c, R.fiducial) != fiducial_target(ctx, l)) return "fiducial flux";
    return "";
}

Config seed_config(const Ctx &ctx, const PackLabel &l, int ordering) {
    check_label(ctx, l);
    const Region &R = ctx.R();
    const ConjugacyClass &C = ctx.G().classes().at(l.cls);
    Config c = with_boundary(ctx, identity_config(ctx), l.b);
    std::vector<char> known(R.E.size(), 0);
    for (int e : R.dE_index) known[e] = 1;

    auto path = fiducial_path(R);
    for (std::size_t k = 0; k + 1 < path.size(); k++) {
        int x = k + 2 == path.size() ? fiducial_target(ctx, l) : 0;
        set_oval(ctx, c, path[k], path[k + 1], x);
        known[R.index(edge_between(path[k], path[k + 1]))] = 1;
    }

    // Gauge fixing: a BFS tree through unknown edges from the anchored vertices carries identities.
    std::vector<char> reached(R.vertices().size(), 0);
    std::deque<int> q;
    auto anchor = [&](Vtx v) {
        int k = R.vertex_index(v);
        if (!reached[k]) {
            reached[k] = 1;
            q.push_back(k);
        }
    };
    for (Vtx v : path) anchor(v);
    for (Vtx v : R.dV) anchor(v);
    while (!q.empty()) {
        Vtx p = R.vertices()[q.front()];
        q.pop_front();
        auto inc = R.incident(p);
        if (ordering == 1) std::reverse(inc.begin(), inc.end());
        for (int e : inc) {
            if (known[e]) continue;
            const Edge &E = R.E[e];
            int w = R.vertex_index(E.from == p ? E.to() : E.from);
            if (w < 0 || reached[w]) continue;
            reached[w] = 1;
            known[e] = 1;
            c[e] = 0;
            q.push_back(w);
        }
    }

    // Faces in BFS order over the dual graph from a neighbour of f0.
    std::vector<Face> order;
    {
        std::set<Face> inF(R.F.begin(), R.F.end()), seen;
        Face start = face_around(R.s0.v, face_index_around(R.s0.v, R.s0.f) + 1);
        std::deque<Face> fq{start};
        seen.insert(start);
        while (!fq.empty()) {
            Face f = fq.front();
            fq.pop_front();
            order.push_back(f);
            for (const Edge &e : face_edges(f)) {
                auto [a, b] = dual_edge(e);
                for (const Face &g : {a, b}) {
                    if (inF.count(g) && seen.insert(g).second) fq.push_back(g);
                }
            }
        }
        if (ordering == 1) std::reverse(order.begin(), order.end());
    }
    std::set<Face> done;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const Face &f : order) {
            if (done.count(f)) continue;
            int unknown = -1, count = 0;
            for (const Edge &e : face_edges(f)) {
                int k = R.index(e);
                if (!known[k]) {
                    unknown = k;
                    count++;
                }
            }
            if (count == 0) {
                done.insert(f);
                continue;
            }
            if (count != 1) continue;
            bool origin = f == R.s0.f;
            solve_face(ctx, c, f, origin ? &R.s0.v : nullptr, origin ? C.elements[l.i] : 0, unknown);
            known[unknown] = 1;
            done.insert(f);
            progress = true;
        }
    }
    if (std::find(known.begin(), known.end(), 0) != known.end()) {
        throw IdentityViolation("seed construction left undetermined edges");
    }
    std::string why = pack_violation(ctx, l, c);
    if (!why.empty()) {
        throw IdentityViolation("seed construction violates constraint: " + why);
    }
    return c;
}

std::vector<Config> enumerate_pack(const Ctx &ctx, const PackLabel &l, std::size_t limit) {
    Config seed = seed_config(ctx, l);
    auto frame = State::bulk_frame(ctx);
    int N = ctx.G().order();
    std::size_t total = 1;
    for (std::size_t k = 0; k < frame.size(); k++) {
        total *= N;
        if (total > limit) throw InputError("pack set too large to enumerate");
    }
    std::vector<Config> out;
    out.reserve(total);
    std::vector<std::pair<int, int>> g(frame.size());
    for (std::size_t idx = 0; idx < total; idx++) {
        std::size_t x = idx;
        for (std::size_t k = 0; k < frame.size(); k++) {
            g[k] = {frame[k], (int)(x % N)};
            x /= N;
        }
        out.push_back(gauge_act(ctx, seed, g));
    }
    return out;
}

State eta_m(const Ctx &ctx, const PackLabel &l) {
    return State::basis(ctx, seed_config(ctx, l), State::bulk_frame(ctx));
}

State eta_uv(const Ctx &ctx, int cls, int irrep, RCLabel u, const BoundaryLabel &v) {
    const QuantumDouble &qd = *ctx.qd;
    const ConjugacyClass &C = qd.cls(cls);
    const Irrep &R = qd.irrep(cls, irrep);
    if (u.i < 0 || u.i >= C.size() || u.j < 0 || u.j >= R.dim || v.jp < 0 || v.jp >= R.dim) {
        throw InputError("eta label out of range");
    }
    double pre = std::sqrt(double(R.dim) / C.centralizer_order());
    State out(ctx, State::bulk_frame(ctx));
    for (int m = 0; m < C.centralizer_order(); m++) {
        cplx w = pre * std::conj(R.at(u.j, v.jp, m));
        if (std::abs(w) < kPrune) continue;
        out = out + eta_m(ctx, {cls, u.i, v.b, m}) * w;
    }
    return out;
}

std::vector<Boundary> boundary_family(const Ctx &ctx, int cls, std::size_t count, std::uint64_t seed) {
    const ConjugacyClass &C = ctx.G().classes().at(cls);
    std::vector<Boundary> out;
    std::set<Boundary> seen;
    auto push = [&](const Boundary &b) {
        if (out.size() < count && seen.insert(b).second) out.push_back(b);
    };
    if (C.elements[0] == 0 && C.size() == 1) push(Boundary(ctx.R().dE.size(), 0));
    for (int i = 0; i < C.size(); i++) push(simple_boundary(ctx, cls, i));
    std::mt19937_64 rng(seed);
    const Region &R = ctx.R();
    int N = ctx.G().order();
    for (int attempt = 0; out.size() < count && attempt < 1000; attempt++) {
        Config c = with_boundary(ctx, identity_config(ctx), out[rng() % out.size()]);
        std::vector<std::pair<int, int>> g;
        for (int k = 0; k < 3; k++) {
            g.push_back({R.vertex_index(R.dV[rng() % R.dV.size()]), (int)(rng() % N)});
        }
        push(boundary_of(ctx, gauge_act(ctx, c, g)));
    }
    return out;
}

namespace {

struct Annulus {
    std::vector<std::pair<Face, int>> steps;  // face and the spoke it determines
    Face closing;
    int first = -1;  // fiducial spoke
    std::vector<int> spokes;
    Vtx vn, vn1;
};

Annulus build_annulus(const Region &R) {
    Annulus a;
    int n = R.n;
    auto dist = [&](Vtx v) { return hex_dist(v, R.s0.v); };
    auto is_spoke = [&](const Edge &e) {
        int d0 = dist(e.from), d1 = dist(e.to());
        return std::min(d0, d1) == n && std::max(d0, d1) == n + 1;
    };
    for (std::size_t e = 0; e < R.E.size(); e++) {
        if (is_spoke(R.E[e])) a.spokes.push_back((int)e);
    }
    a.vn = R.at(n, 0);
    a.vn1 = R.at(n + 1, 0);
    a.first = R.index(edge_between(a.vn, a.vn1));
    std::set<Face> inF(R.F.begin(), R.F.end()), used;
    int cur = a.first;
    Face f = face_left(a.vn, a.vn1);
    for (;;) {
        used.insert(f);
        int next = -1;
        for (const Edge &e : face_edges(f)) {
            int k = R.index(e);
            if (k != cur && is_spoke(e)) next = k;
        }
        if (next < 0) throw IdentityViolation("outer annulus face without a second spoke");
        if (next == a.first) {
            a.closing = f;
            break;
        }
        a.steps.push_back({f, next});
        auto [x, y] = dual_edge(R.E[next]);
        Face g = x == f ? y : x;
        if (!inF.count(g) || used.count(g)) throw IdentityViolation("outer annulus walk left the region");
        cur = next;
        f = g;
    }
    if (a.steps.size() + 1 != a.spokes.size()) throw IdentityViolation("outer annulus walk missed spokes");
    return a;
}

class BoundaryMap : public Monomial {
   public:
    BoundaryMap(Ctx ctx, std::shared_ptr<const Annulus> an, Boundary b2, Boundary b1)
        : ctx_(std::move(ctx)), an_(std::move(an)), b2_(std::move(b2)), b1_(std::move(b1)) {
        const FiniteGroup &G = ctx_.G();
        int f1 = boundary_flux(ctx_, b1_), f2 = boundary_flux(ctx_, b2_);
        int cls = G.class_of(f1);
        if (G.class_of(f2) != cls) throw InputError("boundary map between incompatible boundary conditions");
        const ConjugacyClass &C = G.classes()[cls];
        twist_ = G.mul(C.q[C.label[f1]], G.inv(C.q[C.label[f2]]));
    }
    bool apply(Config &c, cplx &) const override {
        if (boundary_of(ctx_, c) != b1_ || !flat(c)) return false;
        const FiniteGroup &G = ctx_.G();
        Config d = with_boundary(ctx_, c, b2_);
        set_oval(ctx_, d, an_->vn, an_->vn1, G.mul(oval(ctx_, c, an_->vn, an_->vn1), twist_));
        for (const auto &[f, spoke] : an_->steps) solve_face(ctx_, d, f, nullptr, 0, spoke);
        if (face_flux(ctx_, d, an_->closing, nullptr) != 0) return false;
        c = d;
        return true;
    }
    std::shared_ptr<const Monomial> adjoint() const override {
        return std::make_shared<BoundaryMap>(ctx_, an_, b1_, b2_);
    }
    std::vector<int> support() const override {
        std::vector<int> s = an_->spokes;
        s.insert(s.end(), ctx_.R().dE_index.begin(), ctx_.R().dE_index.end());
        return s;
    }
    std::vector<Vtx> exceptional() const override {
        return {};
    }
    std::string describe() const override {
        return "U[boundary map]";
    }

   private:
    bool flat(const Config &c) const {
        for (const auto &st : an_->steps) {
            if (face_flux(ctx_, c, st.first, nullptr) != 0) return false;
        }
        return face_flux(ctx_, c, an_->closing, nullptr) == 0;
    }
    Ctx ctx_;
    std::shared_ptr<const Annulus> an_;
    Boundary b2_, b1_;
    int twist_ = 0;
};

}  // namespace

Op boundary_map(const Ctx &ctx, const Boundary &b2, const Boundary &b1) {
    if (b1.size() != ctx.R().dE.size() || b2.size() != ctx.R().dE.size()) {
        throw InputError("boundary condition has wrong length");
    }
    auto an = std::make_shared<const Annulus>(build_annulus(ctx.R()));
    return Op::leaf(std::make_shared<BoundaryMap>(ctx, an, b2, b1));
}

Op boundary_label_changer(const Ctx &ctx, int cls, int irrep, const BoundaryLabel &v2, const BoundaryLabel &v1) {
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.qd->cls(cls);
    const Irrep &R = ctx.qd->irrep(cls, irrep);
    int i1 = boundary_label(ctx, v1.b, cls);
    if (i1 < 0 || boundary_label(ctx, v2.b, cls) < 0) {
        throw InputError("incompatible boundary: boundary flux is not in class " + std::to_string(cls));
    }
    if (v1.jp < 0 || v1.jp >= R.dim || v2.jp < 0 || v2.jp >= R.dim) throw InputError("boundary label out of range");
    Op U = boundary_map(ctx, v2.b, v1.b);
    double pre = double(R.dim) / C.centralizer_order();
    std::vector<std::pair<cplx, Op>> t;
    for (int m = 0; m < C.centralizer_order(); m++) {
        int h = G.conj(C.q[i1], G.inv(C.centralizer[m]));
        t.push_back({pre * R.at(v2.jp, v1.jp, m), U * ribbon_L(ctx, ctx.R().boundary, h)});
    }
    return Op::sum(t);
}

Op label_changer(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u2, RCLabel u1) {
    return gauge_A_RC(ctx, s, cls, irrep, u2, u1);
}

}  // namespace qdlab
