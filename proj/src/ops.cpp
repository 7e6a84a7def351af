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

#include "qdlab/ops.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qdlab/errors.hpp"

namespace qdlab {

Ctx Ctx::make(const QuantumDouble &qd, const Region &region) {
    if (qd.group().order() > 127) {
        throw InputError("group order " + std::to_string(qd.group().order()) + " exceeds the supported maximum 127");
    }
    return {std::make_shared<const QuantumDouble>(qd), std::make_shared<const Region>(region)};
}

struct Op::Node {
    enum Kind { LEAF, SUM, PROD } kind = SUM;
    std::shared_ptr<const Monomial> mono;
    std::vector<std::pair<cplx, Op>> terms;
    std::vector<Op> factors;
    std::vector<int> support;
    std::vector<Vtx> exceptional;
};

namespace {

template <typename T>
std::vector<T> sorted_union(std::vector<T> a, const std::vector<T> &b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

void prune(Amplitudes &a) {
    for (auto it = a.begin(); it != a.end();) {
        if (std::abs(it->second) < kPrune) {
            it = a.erase(it);
        } else {
            ++it;
        }
    }
}

}  // namespace

Op::Op() : node_(std::make_shared<const Node>()) {
}

Op Op::zero() {
    return Op();
}

Op Op::identity() {
    auto n = std::make_shared<Node>();
    n->kind = Node::PROD;
    return Op(n);
}

Op Op::leaf(std::shared_ptr<const Monomial> m) {
    auto n = std::make_shared<Node>();
    n->kind = Node::LEAF;
    n->support = m->support();
    std::sort(n->support.begin(), n->support.end());
    n->exceptional = sorted_union(m->exceptional(), {});
    n->mono = std::move(m);
    return Op(n);
}

Op Op::sum(const std::vector<std::pair<cplx, Op>> &terms) {
    auto n = std::make_shared<Node>();
    n->kind = Node::SUM;
    for (const auto &[w, op] : terms) {
        if (w == cplx(0) || (op.node_->kind == Node::SUM && op.node_->terms.empty())) {
            continue;
        }
        if (op.node_->kind == Node::SUM) {
            for (const auto &[w2, op2] : op.node_->terms) {
                n->terms.push_back({w * w2, op2});
            }
        } else {
            n->terms.push_back({w, op});
        }
        n->support = sorted_union(n->support, op.support());
        n->exceptional = sorted_union(n->exceptional, op.exceptional());
    }
    return Op(n);
}

Op Op::product(const std::vector<Op> &factors) {
    auto n = std::make_shared<Node>();
    n->kind = Node::PROD;
    for (const auto &f : factors) {
        if (f.node_->kind == Node::SUM && f.node_->terms.empty()) {
            return Op::zero();
        }
        if (f.node_->kind == Node::PROD) {
            n->factors.insert(n->factors.end(), f.node_->factors.begin(), f.node_->factors.end());
        } else {
            n->factors.push_back(f);
        }
        n->support = sorted_union(n->support, f.support());
        n->exceptional = sorted_union(n->exceptional, f.exceptional());
    }
    if (n->factors.size() == 1) {
        return n->factors[0];
    }
    return Op(n);
}

Op Op::operator+(const Op &o) const {
    return sum({{1, *this}, {1, o}});
}

Op Op::operator-(const Op &o) const {
    return sum({{1, *this}, {-1, o}});
}

Op Op::operator*(const Op &o) const {
    return product({*this, o});
}

Op Op::operator*(cplx s) const {
    return sum({{s, *this}});
}

Op Op::adjoint() const {
    switch (node_->kind) {
        case Node::LEAF:
            return leaf(node_->mono->adjoint());
        case Node::SUM: {
            std::vector<std::pair<cplx, Op>> t;
            for (const auto &[w, op] : node_->terms) {
                t.push_back({std::conj(w), op.adjoint()});
            }
            return sum(t);
        }
        default: {
            std::vector<Op> f;
            for (auto it = node_->factors.rbegin(); it != node_->factors.rend(); ++it) {
                f.push_back(it->adjoint());
            }
            return f.empty() ? identity() : product(f);
        }
    }
}

const std::vector<int> &Op::support() const {
    return node_->support;
}

Op Op::gauge_invariant() const {
    auto n = std::make_shared<Node>(*node_);
    n->exceptional.clear();
    return Op(n);
}

const std::vector<Vtx> &Op::exceptional() const {
    return node_->exceptional;
}

std::size_t Op::leaf_count() const {
    switch (node_->kind) {
        case Node::LEAF:
            return 1;
        case Node::SUM: {
            std::size_t c = 0;
            for (const auto &t : node_->terms) c += t.second.leaf_count();
            return c;
        }
        default: {
            std::size_t c = 0;
            for (const auto &f : node_->factors) c += f.leaf_count();
            return c;
        }
    }
}

std::string Op::describe() const {
    std::ostringstream ss;
    switch (node_->kind) {
        case Node::LEAF:
            return node_->mono->describe();
        case Node::SUM:
            if (node_->terms.empty()) return "0";
            ss << "sum[" << node_->terms.size() << "](" << node_->terms[0].second.describe() << ", ...)";
            return ss.str();
        default:
            if (node_->factors.empty()) return "1";
            ss << "prod(";
            for (std::size_t k = 0; k < node_->factors.size(); k++) {
                ss << (k ? " * " : "") << node_->factors[k].describe();
            }
            ss << ")";
            return ss.str();
    }
}

void Op::apply_basis(const Config &c, cplx coef, Amplitudes &out) const {
    switch (node_->kind) {
        case Node::LEAF: {
            Config x = c;
            cplx w = coef;
            if (node_->mono->apply(x, w)) {
                out[x] += w;
            }
            return;
        }
        case Node::SUM:
            for (const auto &[w, op] : node_->terms) {
                op.apply_basis(c, coef * w, out);
            }
            return;
        default: {
            if (node_->factors.empty()) {
                out[c] += coef;
                return;
            }
            Amplitudes cur{{c, coef}};
            for (auto it = node_->factors.rbegin(); it != node_->factors.rend(); ++it) {
                Amplitudes next;
                for (const auto &[x, a] : cur) {
                    it->apply_basis(x, a, next);
                }
                prune(next);
                cur.swap(next);
                if (cur.empty()) {
                    return;
                }
            }
            for (const auto &[x, a] : cur) {
                out[x] += a;
            }
        }
    }
}

Amplitudes Op::apply_basis(const Config &c) const {
    Amplitudes out;
    apply_basis(c, 1, out);
    prune(out);
    return out;
}

namespace {

int edge_index(const Ctx &ctx, const Edge &e) {
    int k = ctx.R().index(e);
    if (k < 0) {
        throw InputError("operator support leaves region at edge " + to_string(e));
    }
    return k;
}

/// a_e -> left * a_e * right, optionally gated on a_e == proj before the map.
class EdgeMap : public Monomial {
   public:
    EdgeMap(std::shared_ptr<const QuantumDouble> qd, int idx, Edge e, int left, int right, int proj)
        : qd_(std::move(qd)), idx_(idx), e_(e), left_(left), right_(right), proj_(proj) {
    }
    bool apply(Config &c, cplx &) const override {
        int x = (unsigned char)c[idx_];
        if (proj_ >= 0 && x != proj_) {
            return false;
        }
        c[idx_] = (char)qd_->group().mul(qd_->group().mul(left_, x), right_);
        return true;
    }
    std::shared_ptr<const Monomial> adjoint() const override {
        int img = proj_ < 0 ? -1 : qd_->group().mul(qd_->group().mul(left_, proj_), right_);
        return std::make_shared<EdgeMap>(qd_, idx_, e_, qd_->group().inv(left_), qd_->group().inv(right_), img);
    }
    std::vector<int> support() const override {
        return {idx_};
    }
    std::vector<Vtx> exceptional() const override {
        return {e_.from, e_.to()};
    }
    std::string describe() const override {
        std::ostringstream ss;
        ss << "edge" << to_string(e_) << "[" << left_ << "*x*" << right_;
        if (proj_ >= 0) ss << " |x=" << proj_;
        ss << "]";
        return ss.str();
    }

   private:
    std::shared_ptr<const QuantumDouble> qd_;
    int idx_;
    Edge e_;
    int left_, right_, proj_;
};

struct WalkStep {
    int idx;
    bool direct;
    bool rev;   // direct: e_tau opposite to canonical
    bool left;  // dual: multiply on the left
    bool inv;   // dual: use the inverse of the twisted element
};

/// F^{h,g} on a ribbon as a flux walk; `inverse` gives the inverse partial map.
class RibbonWalk : public Monomial {
   public:
    RibbonWalk(std::shared_ptr<const QuantumDouble> qd, std::vector<WalkStep> steps, std::vector<Vtx> ends, int h,
               int g, bool inverse, std::string tag)
        : qd_(std::move(qd)),
          steps_(std::move(steps)),
          ends_(std::move(ends)),
          h_(h),
          g_(g),
          inverse_(inverse),
          tag_(std::move(tag)) {
    }
    bool apply(Config &c, cplx &) const override {
        const FiniteGroup &G = qd_->group();
        int K = 0;
        int hh = inverse_ ? G.inv(h_) : h_;
        for (const auto &s : steps_) {
            int x = (unsigned char)c[s.idx];
            if (s.direct) {
                K = G.mul(K, s.rev ? G.inv(x) : x);
            } else {
                int t = G.mul(G.mul(G.inv(K), hh), K);
                if (s.inv) t = G.inv(t);
                c[s.idx] = (char)(s.left ? G.mul(t, x) : G.mul(x, t));
            }
        }
        return K == g_;
    }
    std::shared_ptr<const Monomial> adjoint() const override {
        return std::make_shared<RibbonWalk>(qd_, steps_, ends_, h_, g_, !inverse_, tag_);
    }
    std::vector<int> support() const override {
        std::vector<int> s;
        for (const auto &st : steps_) s.push_back(st.idx);
        return s;
    }
    std::vector<Vtx> exceptional() const override {
        return ends_;
    }
    std::string describe() const override {
        std::ostringstream ss;
        ss << "F" << (inverse_ ? "^*" : "") << "[" << tag_ << ";h=" << h_ << ",g=" << g_ << "]";
        return ss.str();
    }

   private:
    std::shared_ptr<const QuantumDouble> qd_;
    std::vector<WalkStep> steps_;
    std::vector<Vtx> ends_;
    int h_, g_;
    bool inverse_;
    std::string tag_;
};

class GaugeMap : public Monomial {
   public:
    GaugeMap(const Ctx &ctx, std::vector<std::pair<int, int>> edge_lr, std::vector<int> edges, std::vector<Vtx> verts,
             bool inverse)
        : ctx_(ctx), lr_(std::move(edge_lr)), edges_(std::move(edges)), verts_(std::move(verts)), inverse_(inverse) {
    }
    bool apply(Config &c, cplx &) const override {
        const FiniteGroup &G = ctx_.G();
        for (std::size_t k = 0; k < edges_.size(); k++) {
            int l = lr_[k].first, r = lr_[k].second;
            if (inverse_) {
                l = G.inv(l);
                r = G.inv(r);
            }
            c[edges_[k]] = (char)G.mul(G.mul(l, c[edges_[k]]), G.inv(r));
        }
        return true;
    }
    std::shared_ptr<const Monomial> adjoint() const override {
        return std::make_shared<GaugeMap>(ctx_, lr_, edges_, verts_, !inverse_);
    }
    std::vector<int> support() const override {
        return edges_;
    }
    std::vector<Vtx> exceptional() const override {
        return verts_;
    }
    std::string describe() const override {
        return std::string("U") + (inverse_ ? "^*" : "") + "[" + std::to_string(verts_.size()) + " vertices]";
    }

   private:
    Ctx ctx_;
    std::vector<std::pair<int, int>> lr_;
    std::vector<int> edges_;
    std::vector<Vtx> verts_;
    bool inverse_;
};

std::vector<WalkStep> compile_walk(const Ctx &ctx, const Ribbon &r) {
    std::vector<WalkStep> steps;
    for (const auto &t : r) {
        if (t.direct) {
            steps.push_back({edge_index(ctx, t.e), true, t.e.from != t.s0.v, false, false});
        } else {
            auto [f0, f1] = dual_edge(t.e);
            bool forward = f0 == t.s0.f && f1 == t.s1.f;
            if (!forward && !(f0 == t.s1.f && f1 == t.s0.f)) {
                throw IdentityViolation("dual triangle " + to_string(t) + " does not cross its edge");
            }
            bool at_start = t.e.from == t.s0.v;
            // forward & d0: h x;  forward & d1: x h;  backward & d0: h^-1 x;  backward & d1: x h^-1.
            steps.push_back({edge_index(ctx, t.e), false, false, at_start, !forward});
        }
    }
    return steps;
}

}  // namespace

Op edge_L(const Ctx &ctx, const Edge &e, int h) {
    return Op::leaf(std::make_shared<EdgeMap>(ctx.qd, edge_index(ctx, e), e, h, 0, -1));
}

Op edge_R(const Ctx &ctx, const Edge &e, int h) {
    return Op::leaf(std::make_shared<EdgeMap>(ctx.qd, edge_index(ctx, e), e, 0, ctx.G().inv(h), -1));
}

Op edge_T(const Ctx &ctx, const Edge &e, int g) {
    return Op::leaf(std::make_shared<EdgeMap>(ctx.qd, edge_index(ctx, e), e, 0, 0, g));
}

Op triangle_L(const Ctx &ctx, const Triangle &t, int h) {
    if (t.direct) {
        throw InputError("L on a direct triangle");
    }
    auto [f0, f1] = dual_edge(t.e);
    bool forward = f0 == t.s0.f && f1 == t.s1.f;
    bool at_start = t.e.from == t.s0.v;
    const FiniteGroup &G = ctx.G();
    if (forward && at_start) return edge_L(ctx, t.e, h);
    if (forward) return edge_R(ctx, t.e, G.inv(h));
    if (at_start) return edge_L(ctx, t.e, G.inv(h));
    return edge_R(ctx, t.e, h);
}

Op triangle_T(const Ctx &ctx, const Triangle &t, int g) {
    if (!t.direct) {
        throw InputError("T on a dual triangle");
    }
    return edge_T(ctx, t.e, t.e.from == t.s0.v ? g : ctx.G().inv(g));
}

Op ribbon_F(const Ctx &ctx, const Ribbon &r, int h, int g) {
    if (r.empty()) {
        return g == 0 ? Op::identity() : Op::zero();
    }
    validate_ribbon(r);
    std::vector<Vtx> ends{r.front().s0.v, r.back().s1.v};
    std::string tag = to_string(r.front().s0) + "->" + to_string(r.back().s1) + "/" + std::to_string(r.size());
    return Op::leaf(std::make_shared<RibbonWalk>(ctx.qd, compile_walk(ctx, r), ends, h, g, false, tag));
}

Op ribbon_T(const Ctx &ctx, const Ribbon &r, int g) {
    return ribbon_F(ctx, r, 0, g);
}

Op ribbon_L(const Ctx &ctx, const Ribbon &r, int h) {
    std::vector<std::pair<cplx, Op>> t;
    for (int g = 0; g < ctx.G().order(); g++) {
        t.push_back({1, ribbon_F(ctx, r, h, g)});
    }
    return Op::sum(t);
}

Op site_A(const Ctx &ctx, const Site &s, int h) {
    return ribbon_F(ctx, rho_star(s), h, 0);
}

Op site_B(const Ctx &ctx, const Site &s, int g) {
    return ribbon_F(ctx, rho_triangle(s), 0, g);
}

Op vertex_A(const Ctx &ctx, Vtx v) {
    Site s{v, face_around(v, 0)};
    std::vector<std::pair<cplx, Op>> t;
    for (int h = 0; h < ctx.G().order(); h++) {
        t.push_back({1.0 / ctx.G().order(), site_A(ctx, s, h)});
    }
    return Op::sum(t).gauge_invariant();
}

Op face_B(const Ctx &ctx, const Face &f) {
    return site_B(ctx, {face_vertices(f)[0], f}, 0).gauge_invariant();
}

std::vector<RCLabel> site_labels(const QuantumDouble &qd, int cls, int irrep) {
    std::vector<RCLabel> out;
    for (int i = 0; i < qd.cls(cls).size(); i++) {
        for (int j = 0; j < qd.irrep(cls, irrep).dim; j++) {
            out.push_back({i, j});
        }
    }
    return out;
}

Op ribbon_F_RC(const Ctx &ctx, const Ribbon &r, int cls, int irrep, RCLabel u, RCLabel v) {
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.qd->cls(cls);
    const Irrep &R = ctx.qd->irrep(cls, irrep);
    if (u.i >= C.size() || v.i >= C.size() || u.j >= R.dim || v.j >= R.dim || u.i < 0 || v.i < 0 || u.j < 0 ||
        v.j < 0) {
        throw InputError("RC label out of range");
    }
    double pre = double(R.dim) / C.centralizer_order();
    std::vector<std::pair<cplx, Op>> t;
    for (int m = 0; m < C.centralizer_order(); m++) {
        int n = C.centralizer[m];
        int g = G.mul(G.mul(C.q[u.i], n), G.inv(C.q[v.i]));
        t.push_back({pre * std::conj(R.at(u.j, v.j, m)), ribbon_F(ctx, r, G.inv(C.elements[u.i]), g)});
    }
    return Op::sum(t);
}

Op gauge_A_RC(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u2, RCLabel u1) {
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.qd->cls(cls);
    const Irrep &R = ctx.qd->irrep(cls, irrep);
    double pre = double(R.dim) / C.centralizer_order();
    std::vector<std::pair<cplx, Op>> t;
    for (int m = 0; m < C.centralizer_order(); m++) {
        int h = G.mul(G.mul(C.q[u2.i], C.centralizer[m]), G.inv(C.q[u1.i]));
        t.push_back({pre * std::conj(R.at(u2.j, u1.j, m)), site_A(ctx, s, h)});
    }
    return Op::sum(t);
}

Op wigner_Du(const Ctx &ctx, const Site &s, int cls, int irrep, RCLabel u) {
    return gauge_A_RC(ctx, s, cls, irrep, u, u) * site_B(ctx, s, ctx.qd->cls(cls).elements[u.i]);
}

Op wigner_D(const Ctx &ctx, const Site &s, int cls, int irrep) {
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.qd->cls(cls);
    const Irrep &R = ctx.qd->irrep(cls, irrep);
    double pre = double(R.dim) / C.centralizer_order();
    std::vector<std::pair<cplx, Op>> t;
    for (int m = 0; m < C.centralizer_order(); m++) {
        for (int q : C.q) {
            t.push_back({pre * std::conj(R.chi(m)),
                         site_A(ctx, s, G.conj(q, C.centralizer[m])) * site_B(ctx, s, G.conj(q, C.rep))});
        }
    }
    return Op::sum(t);
}

Op charge_detector(const Ctx &ctx, const Ribbon &sigma, int cls, int irrep) {
    if (!is_closed(sigma)) {
        throw InputError("charge detector needs a closed ribbon");
    }
    const FiniteGroup &G = ctx.G();
    const ConjugacyClass &C = ctx.qd->cls(cls);
    const Irrep &R = ctx.qd->irrep(cls, irrep);
    double pre = double(R.dim) / C.centralizer_order();
    std::vector<std::pair<cplx, Op>> t;
    for (int m = 0; m < C.centralizer_order(); m++) {
        for (int q : C.q) {
            t.push_back({pre * std::conj(R.chi(m)), ribbon_F(ctx, sigma, G.conj(q, C.centralizer[m]), G.conj(q, C.rep))});
        }
    }
    return Op::sum(t);
}

Op gauge_unitary(const Ctx &ctx, const std::map<Vtx, int> &g) {
    const Region &R = ctx.R();
    std::set<int> edges;
    std::vector<Vtx> verts;
    for (const auto &[v, x] : g) {
        if (x == 0) continue;
        if (R.vertex_index(v) < 0 || hex_dist(v, R.s0.v) > R.n) {
            throw InputError("gauge transformation at " + to_string(v) + " is not supported in the region");
        }
        verts.push_back(v);
        for (int e : R.incident(v)) edges.insert(e);
    }
    if (verts.empty()) {
        return Op::identity();
    }
    std::vector<int> es(edges.begin(), edges.end());
    std::vector<std::pair<int, int>> lr;
    for (int e : es) {
        auto at = [&](Vtx v) {
            auto it = g.find(v);
            return it == g.end() ? 0 : it->second;
        };
        lr.push_back({at(R.E[e].from), at(R.E[e].to())});
    }
    return Op::leaf(std::make_shared<GaugeMap>(ctx, lr, es, verts, false));
}

Op boundary_projector(const Ctx &ctx, const std::vector<int> &b) {
    const Region &R = ctx.R();
    if (b.size() != R.dE.size()) {
        throw InputError("boundary condition has wrong length");
    }
    std::vector<Op> f;
    for (std::size_t k = 0; k < b.size(); k++) {
        f.push_back(edge_T(ctx, R.dE[k], b[k]));
    }
    return Op::product(f);
}

int oriented_value(const Ctx &ctx, const Config &c, Vtx from, Vtx to) {
    Edge e = edge_between(from, to);
    int x = c[edge_index(ctx, e)];
    return e.from == from ? x : ctx.G().inv(x);
}

int flux(const Ctx &ctx, const Config &c, const Ribbon &r) {
    int K = 0;
    for (const auto &oe : direct_path(r)) {
        K = ctx.G().mul(K, oriented_value(ctx, c, oe.from, oe.to));
    }
    return K;
}

Config identity_config(const Ctx &ctx) {
    return Config(ctx.R().E.size(), (char)0);
}

}  // namespace qdlab
