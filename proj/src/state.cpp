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

#include "qdlab/state.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "qdlab/errors.hpp"

namespace qdlab {

struct State::Tree {
    struct Link {
        int w, p, e;
        bool forward;  // edge runs p -> w
    };
    std::vector<Link> links;
    std::vector<int> touched;  // edges with an endpoint in the frame
};

namespace {

int vidx(const Region &R, Vtx v) {
    int k = R.vertex_index(v);
    if (k < 0) throw IdentityViolation("vertex " + to_string(v) + " outside region");
    return k;
}

}  // namespace

State::State(Ctx ctx, std::vector<int> frame) : ctx_(std::move(ctx)), frame_(std::move(frame)) {
    std::sort(frame_.begin(), frame_.end());
    frame_.erase(std::unique(frame_.begin(), frame_.end()), frame_.end());
    int v0 = ctx_.R().vertex_index(ctx_.R().s0.v);
    for (int w : frame_) {
        Vtx v = ctx_.R().vertices().at(w);
        if (w == v0 || hex_dist(v, ctx_.R().s0.v) > ctx_.R().n) {
            throw InputError("frame vertex " + to_string(v) + " is not in the punctured bulk");
        }
    }
}

std::vector<int> State::bulk_frame(const Ctx &ctx) {
    std::vector<int> f;
    for (Vtx v : ctx.R().Vdot) f.push_back(ctx.R().vertex_index(v));
    std::sort(f.begin(), f.end());
    return f;
}

State State::basis(const Ctx &ctx, const Config &c, std::vector<int> frame) {
    State s(ctx, std::move(frame));
    s.add(c, 1);
    return s;
}

std::shared_ptr<const State::Tree> State::tree() const {
    if (tree_) return tree_;
    const Region &R = ctx_.R();
    auto t = std::make_shared<Tree>();
    std::size_t nv = R.vertices().size();
    std::vector<char> in(nv, 0), seen(nv, 0);
    for (int w : frame_) in[w] = 1;
    std::deque<int> q;
    for (std::size_t k = 0; k < nv; k++) {
        if (!in[k]) {
            seen[k] = 1;
            q.push_back((int)k);
        }
    }
    std::vector<char> touched(R.E.size(), 0);
    while (!q.empty()) {
        int p = q.front();
        q.pop_front();
        Vtx pv = R.vertices()[p];
        for (int e : R.incident(pv)) {
            const Edge &E = R.E[e];
            Vtx other = E.from == pv ? E.to() : E.from;
            int w = R.vertex_index(other);
            if (w < 0) continue;
            if (in[w] || in[p]) touched[e] = 1;
            if (seen[w]) continue;
            seen[w] = 1;
            t->links.push_back({w, p, e, E.from == pv});
            q.push_back(w);
        }
    }
    for (int w : frame_) {
        if (!seen[w]) throw IdentityViolation("gauge frame not connected to its complement");
    }
    for (std::size_t e = 0; e < touched.size(); e++) {
        if (touched[e]) t->touched.push_back((int)e);
    }
    tree_ = t;
    return tree_;
}

Config State::canonical(const Config &c) const {
    if (frame_.empty()) return c;
    const FiniteGroup &G = ctx_.G();
    const Region &R = ctx_.R();
    auto t = tree();
    std::vector<int> g(R.vertices().size(), 0);
    for (const auto &l : t->links) {
        int x = (unsigned char)c[l.e];
        g[l.w] = G.mul(g[l.p], l.forward ? x : G.inv(x));
    }
    Config out = c;
    for (int e : t->touched) {
        const Edge &E = R.E[e];
        int a = g[vidx(R, E.from)], b = g[vidx(R, E.to())];
        out[e] = (char)G.mul(G.mul(a, (unsigned char)c[e]), G.inv(b));
    }
    return out;
}

void State::add(const Config &c, cplx a) {
    if (c.size() != ctx_.R().E.size()) {
        throw InputError("configuration length does not match the region edge set");
    }
    amps_[canonical(c)] += a;
}

void State::prune() {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) < kPrune) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
}

Config gauge_act(const Ctx &ctx, const Config &c, const std::vector<std::pair<int, int>> &g) {
    const FiniteGroup &G = ctx.G();
    const Region &R = ctx.R();
    Config out = c;
    for (const auto &[w, x] : g) {
        if (x == 0) continue;
        Vtx v = R.vertices().at(w);
        for (int e : R.incident(v)) {
            const Edge &E = R.E[e];
            int y = (unsigned char)out[e];
            if (E.from == v) y = G.mul(x, y);
            if (E.to() == v) y = G.mul(y, G.inv(x));
            out[e] = (char)y;
        }
    }
    return out;
}

std::vector<int> frame_without(const Ctx &ctx, const std::vector<int> &frame, const std::vector<Vtx> &remove) {
    std::vector<int> drop;
    for (Vtx v : remove) drop.push_back(ctx.R().vertex_index(v));
    std::vector<int> out;
    for (int w : frame) {
        if (std::find(drop.begin(), drop.end(), w) == drop.end()) out.push_back(w);
    }
    return out;
}

std::vector<int> frame_intersection(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

State State::projected(std::vector<int> frame) const {
    std::sort(frame.begin(), frame.end());
    frame.erase(std::unique(frame.begin(), frame.end()), frame.end());
    if (!std::includes(frame.begin(), frame.end(), frame_.begin(), frame_.end())) {
        throw IdentityViolation("projection to a frame that does not contain the current one");
    }
    State out(ctx_, frame);
    double w = std::pow((double)ctx_.G().order(), -0.5 * ((double)frame.size() - (double)frame_.size()));
    for (const auto &[c, a] : amps_) out.add(c, a * w);
    out.prune();
    return out;
}

State State::restricted(const std::vector<int> &frame) const {
    std::vector<int> D;
    std::set_difference(frame_.begin(), frame_.end(), frame.begin(), frame.end(), std::back_inserter(D));
    if (!std::includes(frame_.begin(), frame_.end(), frame.begin(), frame.end())) {
        throw IdentityViolation("restriction to a frame that is not a subset");
    }
    State out(ctx_, frame);
    if (D.empty()) {
        out.amps_ = amps_;
        out.tree_ = tree_;
        return out;
    }
    int N = ctx_.G().order();
    std::size_t count = 1;
    for (std::size_t k = 0; k < D.size(); k++) count *= N;
    double w = std::pow((double)N, -0.5 * D.size());
    std::vector<std::pair<int, int>> g(D.size());
    for (const auto &[c, a] : amps_) {
        for (std::size_t idx = 0; idx < count; idx++) {
            std::size_t x = idx;
            for (std::size_t k = 0; k < D.size(); k++) {
                g[k] = {D[k], (int)(x % N)};
                x /= N;
            }
            out.add(gauge_act(ctx_, c, g), a * w);
        }
    }
    out.prune();
    return out;
}

State State::apply(const Op &op) const {
    State base = restricted(frame_without(ctx_, frame_, op.exceptional()));
    State out(ctx_, base.frame_);
    out.tree_ = base.tree_;
    for (const auto &[c, a] : base.amps_) {
        for (const auto &[d, b] : op.apply_basis(c)) out.add(d, a * b);
    }
    out.prune();
    return out;
}

cplx State::inner(const State &other) const {
    if (frame_ != other.frame_) {
        auto f = frame_intersection(frame_, other.frame_);
        if (f == frame_) return std::conj(other.inner(*this));
        if (f != other.frame_) return restricted(f).inner(other);
        // other's orbits are unions of ours, so each of its representatives needs one lookup
        double w = std::pow((double)ctx_.G().order(), 0.5 * ((double)f.size() - (double)frame_.size()));
        cplx s = 0;
        for (const auto &[c, b] : other.amps_) {
            auto it = amps_.find(canonical(c));
            if (it != amps_.end()) s += std::conj(it->second) * b;
        }
        return s * w;
    }
    const Amplitudes &small = amps_.size() <= other.amps_.size() ? amps_ : other.amps_;
    const Amplitudes &big = &small == &amps_ ? other.amps_ : amps_;
    cplx s = 0;
    for (const auto &[c, a] : small) {
        auto it = big.find(c);
        if (it == big.end()) continue;
        s += &small == &amps_ ? std::conj(a) * it->second : std::conj(it->second) * a;
    }
    return s;
}

double State::norm() const {
    double s = 0;
    for (const auto &kv : amps_) s += std::norm(kv.second);
    return std::sqrt(s);
}

State State::normalized() const {
    double n = norm();
    if (n < kPrune) throw IdentityViolation("normalizing a zero state");
    return *this * (1.0 / n);
}

State State::operator+(const State &o) const {
    if (frame_ != o.frame_) {
        auto f = frame_intersection(frame_, o.frame_);
        return restricted(f) + o.restricted(f);
    }
    State out = *this;
    for (const auto &[c, a] : o.amps_) out.amps_[c] += a;
    out.prune();
    return out;
}

State State::operator-(const State &o) const {
    return *this + o * -1.0;
}

State State::operator*(cplx s) const {
    State out = *this;
    for (auto &kv : out.amps_) kv.second *= s;
    out.prune();
    return out;
}

double State::distance(const State &o) const {
    return (*this - o).norm();
}

Amplitudes State::expanded() const {
    return restricted({}).amps_;
}

}  // namespace qdlab
