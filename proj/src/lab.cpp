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


#include "qdlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qdlab/errors.hpp"

namespace qdlab {

namespace {

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << x;
    return ss.str();
}

std::string label_str(RCLabel u) {
    return "(" + std::to_string(u.i) + "," + std::to_string(u.j) + ")";
}

double ratio(const Ctx &ctx, const Sector &s) {
    return double(ctx.qd->irrep(s.cls, s.irrep).dim) / ctx.qd->cls(s.cls).centralizer_order();
}

std::vector<RCLabel> labels_of(const Ctx &ctx, const Sector &s) {
    return site_labels(*ctx.qd, s.cls, s.irrep);
}

std::vector<BoundaryLabel> boundary_labels(const Ctx &ctx, const Sector &s, std::size_t count, std::uint64_t seed) {
    std::vector<BoundaryLabel> out;
    int d = ctx.qd->irrep(s.cls, s.irrep).dim;
    for (const auto &b : boundary_family(ctx, s.cls, count, seed)) {
        for (int jp = 0; jp < d; jp++) out.push_back({b, jp});
    }
    return out;
}

std::vector<int> support_of(const Ribbon &r, const Region &R) {
    auto idx = R.edge_indices(support(r));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<int> minus(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> union_support(const std::vector<Op> &ops) {
    std::set<int> s;
    for (const auto &op : ops) s.insert(op.support().begin(), op.support().end());
    return {s.begin(), s.end()};
}

Ribbon prefix(const Ribbon &r, std::size_t k) {
    return Ribbon(r.begin(), r.begin() + std::min(k, r.size()));
}

/// Edges of faces around a vertex that lie in the region.
std::vector<int> edges_near(const Region &R, Vtx v) {
    std::set<int> out;
    for (int k = 0; k < 6; k++) {
        for (const auto &e : face_edges(face_around(v, k))) {
            int i = R.index(e);
            if (i >= 0) out.insert(i);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<Sector> all_sectors(const QuantumDouble &qd) {
    std::vector<Sector> out;
    for (const auto &C : qd.group().classes()) {
        for (int r = 0; r < (int)qd.irreps(C.id).size(); r++) out.push_back({C.id, r});
    }
    return out;
}

std::string sector_name(const QuantumDouble &qd, const Sector &s) {
    for (const auto &l : qd.labels()) {
        if (l.cls == s.cls && l.irrep == s.irrep) return l.name;
    }
    return std::to_string(s.cls) + ":" + std::to_string(s.irrep);
}

Sector parse_sector(const QuantumDouble &qd, const std::string &text) {
    for (const auto &l : qd.labels()) {
        if (l.name == text) return {l.cls, l.irrep};
    }
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        try {
            Sector s{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
            for (const auto &t : all_sectors(qd)) {
                if (t == s) return s;
            }
        } catch (const std::exception &) {
        }
    }
    throw InputError("unknown sector '" + text + "'");
}

void Report::add(const std::string &lemma, const std::string &detail, double deviation, double tolerance) {
    checks.push_back({lemma, detail, deviation, tolerance});
}

void Report::merge(const Report &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass(); });
}

double Report::worst() const {
    double w = 0;
    for (const auto &c : checks) w = std::max(w, c.deviation);
    return w;
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> out;
    for (const auto &c : checks) {
        if (!c.pass() && std::find(out.begin(), out.end(), c.lemma) == out.end()) out.push_back(c.lemma);
    }
    return out;
}

std::vector<Config> probe_configs(const Ctx &ctx, const std::vector<int> &support, std::mt19937_64 &rng,
                                  std::size_t samples, std::size_t limit) {
    int N = ctx.G().order();
    std::size_t total = 1;
    bool small = true;
    for (std::size_t k = 0; k < support.size() && small; k++) {
        total *= N;
        small = total <= limit;
    }
    auto random_config = [&]() {
        Config c(ctx.R().E.size(), 0);
        for (auto &x : c) x = (char)(rng() % N);
        return c;
    };
    std::vector<Config> out;
    if (small) {
        Config bg = random_config();
        for (std::size_t idx = 0; idx < total; idx++) {
            Config c = bg;
            std::size_t x = idx;
            for (int e : support) {
                c[e] = (char)(x % N);
                x /= N;
            }
            out.push_back(c);
        }
    } else {
        for (std::size_t k = 0; k < samples; k++) out.push_back(random_config());
    }
    return out;
}

double op_distance(const Op &a, const Op &b, const std::vector<Config> &probes) {
    double d = 0;
    for (const auto &c : probes) {
        Amplitudes x = a.apply_basis(c), y = b.apply_basis(c);
        for (const auto &[k, v] : x) {
            auto it = y.find(k);
            d = std::max(d, std::abs(v - (it == y.end() ? cplx(0) : it->second)));
        }
        for (const auto &[k, v] : y) {
            if (!x.count(k)) d = std::max(d, std::abs(v));
        }
    }
    return d;
}

double op_distance(const Ctx &ctx, const Op &a, const Op &b, std::mt19937_64 &rng, std::size_t samples,
                   std::size_t limit) {
    return op_distance(a, b, probe_configs(ctx, union_support({a, b}), rng, samples, limit));
}

Ribbon sample_ribbon(const Region &R, std::mt19937_64 &rng, int length, int sign, int kinds) {
    for (int attempt = 0; attempt < 10000; attempt++) {
        Vtx v = R.V[rng() % R.V.size()];
        Site s{v, face_around(v, rng() % 6)};
        Ribbon r;
        std::set<Edge> used;
        int sg = sign;
        while ((int)r.size() < length) {
            std::vector<Triangle> opts;
            if (kinds & 1) {
                for (Vtx u : face_vertices(s.f)) {
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
        if ((int)r.size() == length) return r;
    }
    throw InputError("no ribbon of length " + std::to_string(length) + " fits in the region");
}

Ribbon ribbon_between(const Region &R, const Site &from, Vtx to, const Face *end_face) {
    if (end_face) {
        auto vs = face_vertices(*end_face);
        if (std::find(vs.begin(), vs.end(), to) == vs.end()) throw InputError("end face does not contain the end vertex");
    }
    std::vector<Vtx> path{from.v};
    while (path.back() != to) {
        Vtx cur = path.back();
        int best = -1;
        for (int k = 0; k < 6; k++) {
            if (hex_dist(cur + step(k), to) < hex_dist(cur, to) && (best < 0 || R.vertex_index(cur + step(k)) >= 0)) {
                best = k;
                if (R.vertex_index(cur + step(k)) >= 0) break;
            }
        }
        path.push_back(cur + step(best));
    }
    Ribbon r = positive_ribbon(from, path, end_face);
    for (const auto &e : support(r)) {
        if (R.index(e) < 0) throw InputError("ribbon leaves the region");
    }
    return r;
}

Op random_monomial(const Ctx &ctx, const std::vector<int> &edges, std::mt19937_64 &rng, int factors) {
    if (edges.empty()) return Op::identity();
    int N = ctx.G().order();
    auto inside = [&](const auto &es) {
        return std::all_of(es.begin(), es.end(), [&](const Edge &x) {
            return std::binary_search(edges.begin(), edges.end(), ctx.R().index(x));
        });
    };
    std::vector<Op> f;
    for (int k = 0; k < factors; k++) {
        const Edge &e = ctx.R().E[edges[rng() % edges.size()]];
        int x = rng() % N;
        auto [f0, f1] = dual_edge(e);
        Site s{rng() % 2 ? e.from : e.to(), rng() % 2 ? f0 : f1};
        std::vector<Edge> star;
        for (int d = 0; d < 6; d++) star.push_back(edge_between(s.v, s.v + step(d)));
        switch (rng() % 5) {
            case 0:
                f.push_back(edge_L(ctx, e, x));
                break;
            case 1:
                f.push_back(edge_R(ctx, e, x));
                break;
            case 2:
                f.push_back(inside(star) ? site_A(ctx, s, x) : edge_T(ctx, e, x));
                break;
            case 3:
                f.push_back(inside(face_edges(s.f)) ? site_B(ctx, s, x) : edge_T(ctx, e, x));
                break;
            default:
                f.push_back(edge_T(ctx, e, x));
        }
    }
    return Op::product(f);
}

Op random_local_op(const Ctx &ctx, const std::vector<int> &edges, std::mt19937_64 &rng, int terms, int factors) {
    std::uniform_real_distribution<double> coef(-1, 1);
    std::vector<std::pair<cplx, Op>> t;
    for (int k = 0; k < terms; k++) t.push_back({cplx(coef(rng), coef(rng)), random_monomial(ctx, edges, rng, factors)});
    return Op::sum(t);
}

State patch_state(const Ctx &ctx) {
    Boundary b(ctx.R().dE.size(), 0);
    return eta_uv(ctx, 0, 0, {0, 0}, {b, 0});
}

Expectation restricted_expectation(const Ctx &ctx, const Sector &s, RCLabel u, const Op &O, std::size_t boundaries,
                                   std::uint64_t seed) {
    const Region &R = ctx.R();
    if (R.n < 1) throw InputError("restricted expectation needs n >= 1");
    auto inner = R.inner_edges(R.n - 1);
    for (int e : O.support()) {
        if (!std::binary_search(inner.begin(), inner.end(), e)) {
            throw InputError("operator support escapes E_" + std::to_string(R.n - 1) + " at edge " + to_string(R.E[e]));
        }
    }
    Expectation out;
    bool first = true;
    for (const auto &v : boundary_labels(ctx, s, boundaries, seed)) {
        State eta = eta_uv(ctx, s.cls, s.irrep, u, v);
        cplx x = eta.inner(eta.apply(O));
        if (first) {
            out.value = x;
            first = false;
        } else {
            out.spread = std::max(out.spread, std::abs(x - out.value));
        }
    }
    return out;
}

Op mu_finite(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u1, RCLabel u2, const Op &O) {
    double pre = 1 / (ratio(ctx, s) * ratio(ctx, s));
    std::vector<std::pair<cplx, Op>> t;
    for (const auto &v : labels_of(ctx, s)) {
        Op a = ribbon_F_RC(ctx, r, s.cls, s.irrep, u1, v).adjoint();
        Op b = ribbon_F_RC(ctx, r, s.cls, s.irrep, u2, v);
        t.push_back({pre, a * O * b});
    }
    return Op::sum(t);
}

Op t_map(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u, RCLabel v, const Op &O) {
    if (r.empty()) throw InputError("t map needs a nonempty ribbon");
    Site s0 = r.front().s0;
    double pre = 1 / (ratio(ctx, s) * ratio(ctx, s));
    auto labels = labels_of(ctx, s);
    Op Dv = wigner_Du(ctx, s0, s.cls, s.irrep, v);
    std::vector<std::pair<cplx, Op>> t;
    for (const auto &w : labels) {
        Op left = ribbon_F_RC(ctx, r, s.cls, s.irrep, u, w) * O;
        for (const auto &z : labels) {
            Op right = ribbon_F_RC(ctx, r, s.cls, s.irrep, z, w).adjoint() * gauge_A_RC(ctx, s0, s.cls, s.irrep, z, v);
            t.push_back({pre, left * right * Dv});
        }
    }
    return Op::sum(t);
}

Op transporter(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u, RCLabel u2) {
    if (r.empty()) throw InputError("transport needs a nonempty ribbon");
    Site s1 = r.back().s1;
    std::vector<std::pair<cplx, Op>> t;
    for (const auto &w : labels_of(ctx, s)) {
        t.push_back({1 / ratio(ctx, s), gauge_A_RC(ctx, s1, s.cls, s.irrep, w, u2).adjoint() *
                                            ribbon_F_RC(ctx, r, s.cls, s.irrep, u, w).adjoint()});
    }
    return Op::sum(t);
}

Report check_mu_properties(const Ctx &ctx, const Sector &s, std::uint64_t seed, int trials, double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    auto labels = labels_of(ctx, s);
    const Ribbon &rho = R.fiducial;
    std::string tag = sector_name(*ctx.qd, s);
    auto pick = [&]() { return labels[rng() % labels.size()]; };
    std::size_t samples = 40;

    // item 1: truncations agree once O is clear of the remaining tail
    auto near = R.inner_edges(0);
    for (int t = 0; t < trials; t++) {
        Op O = random_local_op(ctx, near, rng);
        std::size_t k0 = rho.size();
        while (k0 > 0) {
            auto tail = support_of(Ribbon(rho.begin() + (k0 - 1), rho.end()), R);
            bool clear = true;
            for (int e : O.support()) clear = clear && !std::binary_search(tail.begin(), tail.end(), e);
            if (!clear) break;
            k0--;
        }
        RCLabel u1 = pick(), u2 = pick();
        Op full = mu_finite(ctx, rho, s, u1, u2, O);
        double d = 0;
        for (std::size_t k = std::max<std::size_t>(k0, 1); k < rho.size(); k++) {
            d = std::max(d, op_distance(ctx, mu_finite(ctx, prefix(rho, k), s, u1, u2, O), full, rng, samples));
        }
        rep.add("ampli properties (1: truncation stability)", tag, d, tol);
    }

    // item 2 and item 3
    auto rho_sup = support_of(rho, R);
    std::vector<int> all(R.E.size());
    for (std::size_t e = 0; e < all.size(); e++) all[e] = (int)e;
    auto away = minus(all, rho_sup);
    for (int t = 0; t < trials; t++) {
        RCLabel u1 = pick(), u2 = pick();
        Op I = Op::identity();
        rep.add("ampli properties (2: unit)", tag,
                op_distance(ctx, mu_finite(ctx, rho, s, u1, u2, I), u1 == u2 ? I : Op::zero(), rng, samples), tol);
        Op O = random_local_op(ctx, away, rng);
        rep.add("ampli properties (3: disjoint support)", tag,
                op_distance(ctx, mu_finite(ctx, rho, s, u1, u2, O), u1 == u2 ? O : Op::zero(), rng, samples), tol);
    }

    // items 4 and 5, positivity
    auto region_edges = R.inner_edges(std::max(0, R.n - 1));
    State patch = patch_state(ctx);
    for (int t = 0; t < trials; t++) {
        RCLabel u1 = pick(), u2 = pick();
        Op O = random_local_op(ctx, near, rng), Op2 = random_local_op(ctx, region_edges, rng);
        std::vector<std::pair<cplx, Op>> rhs;
        for (const auto &u3 : labels) {
            rhs.push_back({1, mu_finite(ctx, rho, s, u1, u3, O) * mu_finite(ctx, rho, s, u3, u2, Op2)});
        }
        rep.add("ampli properties (4: multiplicative)", tag,
                op_distance(ctx, mu_finite(ctx, rho, s, u1, u2, O * Op2), Op::sum(rhs), rng, samples / 2), tol);
        rep.add("ampli properties (5: adjoint)", tag,
                op_distance(ctx, mu_finite(ctx, rho, s, u1, u2, O).adjoint(), mu_finite(ctx, rho, s, u2, u1, O.adjoint()),
                            rng, samples),
                tol);
        Op X = O + Op2 * cplx(0.5, -0.25);
        cplx e = patch.inner(patch.apply(mu_finite(ctx, rho, s, u1, u1, X.adjoint() * X)));
        rep.add("ampli properties (positivity)", tag + " value " + fmt(e.real()),
                std::max({0.0, -e.real(), std::abs(e.imag())}), tol);
    }
    return rep;
}

Report check_anyon_state_consistency(const Ctx &ctx, const Sector &s, RCLabel u, int random_ops, std::uint64_t seed,
                                     double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    State patch = patch_state(ctx);
    const Ribbon &rho = R.fiducial;
    std::string tag = sector_name(*ctx.qd, s) + " u=" + label_str(u);
    auto compare = [&](const std::string &what, const Op &O) {
        cplx lhs = patch.inner(patch.apply(mu_finite(ctx, rho, s, u, u, O)));
        Expectation rhs = restricted_expectation(ctx, s, u, O, 2, seed);
        rep.add("qdstate from mu action", tag + " " + what + " lhs " + fmt(lhs.real()) + " rhs " + fmt(rhs.value.real()),
                std::max(std::abs(lhs - rhs.value), rhs.spread), tol);
    };
    int ci = ctx.qd->cls(s.cls).elements[u.i];
    compare("B_s0^{c_i}", site_B(ctx, R.s0, ci));
    Op B = site_B(ctx, R.s0, ci);
    cplx one = patch.inner(patch.apply(mu_finite(ctx, rho, s, u, u, B)));
    rep.add("qdstate from mu action", tag + " B_s0^{c_i} equals one", std::abs(one - 1.0), tol);
    if (R.n >= 2) {
        Vtx far = R.at(-1, 0);
        compare("A_v away from s0", vertex_A(ctx, far));
    }
    auto inner = R.inner_edges(R.n - 1);
    for (int k = 0; k < random_ops; k++) compare("random local operator", random_local_op(ctx, inner, rng));
    return rep;
}

Report verify_magic(const Ctx &ctx, const Sector &s, int prefix_len, int random_ops, std::uint64_t seed, double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    State patch = patch_state(ctx);
    const Ribbon &rho = R.fiducial;
    if (prefix_len < 1 || prefix_len > (int)rho.size()) throw InputError("prefix length outside the fiducial ribbon");
    Ribbon rho_n = prefix(rho, prefix_len);
    auto tail = support_of(Ribbon(rho.begin() + prefix_len, rho.end()), R);
    auto usable = minus(R.inner_edges(R.n - 1), tail);
    auto labels = labels_of(ctx, s);
    std::string tag = sector_name(*ctx.qd, s);

    std::vector<std::pair<std::string, Op>> ops{{"identity", Op::identity()}};
    auto near = minus(R.inner_edges(0), tail);
    if (!near.empty()) ops.push_back({"T_e^g near s0", edge_T(ctx, R.E[near[rng() % near.size()]], rng() % ctx.G().order())});
    for (int k = 0; k < random_ops; k++) ops.push_back({"random local operator", random_local_op(ctx, usable, rng)});

    // label quadruples: all for small label sets, otherwise matching pairs and random mismatches
    std::vector<std::array<RCLabel, 4>> quads;
    if (labels.size() <= 2) {
        for (auto a : labels)
            for (auto b : labels)
                for (auto c : labels)
                    for (auto d : labels) quads.push_back({a, b, c, d});
    } else {
        for (int k = 0; k < 4; k++) {
            RCLabel a = labels[rng() % labels.size()], b = labels[rng() % labels.size()];
            quads.push_back({a, b, a, b});
            quads.push_back({a, b, labels[rng() % labels.size()], labels[rng() % labels.size()]});
        }
    }
    for (const auto &[what, O] : ops) {
        State target = patch.apply(O);
        for (const auto &[u1, v1, u2, v2] : quads) {
            State lhs = patch.apply(mu_finite(ctx, rho, s, u1, v1, t_map(ctx, rho_n, s, u2, v2, O)));
            bool hit = u1 == u2 && v1 == v2;
            double d = lhs.distance(hit ? target : target * 0.0);
            rep.add("magic map", tag + " " + what + " u1" + label_str(u1) + " v1" + label_str(v1) + " u2" + label_str(u2) +
                                     " v2" + label_str(v2),
                    d, tol);
        }
    }
    return rep;
}

Report check_ground_state_actions(const Ctx &ctx, const Sector &s, std::uint64_t seed, double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    State patch = patch_state(ctx);
    const Ribbon &rho = R.fiducial;
    Site s0 = R.s0;
    auto labels = labels_of(ctx, s);
    std::string tag = sector_name(*ctx.qd, s);
    RCLabel v = labels[rng() % labels.size()];
    auto F = [&](RCLabel a, RCLabel b) { return ribbon_F_RC(ctx, rho, s.cls, s.irrep, a, b); };

    bool trivial = s.cls == 0 && s.irrep == 0;
    for (const auto &u : labels) {
        double d = patch.apply(wigner_Du(ctx, s0, s.cls, s.irrep, u)).distance(trivial ? patch : patch * 0.0);
        rep.add("D kills the ground state", tag, d, tol);
    }
    for (const auto &u1 : labels) {
        State Fu1 = patch.apply(F(u1, v));
        for (const auto &u2 : labels) {
            State Fu2 = patch.apply(F(u2, v));
            rep.add("change ribbon operator label", tag,
                    Fu1.apply(gauge_A_RC(ctx, s0, s.cls, s.irrep, u2, u1)).distance(Fu2), tol);
            State want = u1 == u2 ? Fu1 : Fu1 * 0.0;
            rep.add("ribbon label projector", tag, Fu2.apply(wigner_Du(ctx, s0, s.cls, s.irrep, u1)).distance(want), tol);
        }
    }
    auto inner = R.inner_edges(R.n - 1);
    for (int k = 0; k < 3; k++) {
        Op O = random_local_op(ctx, inner, rng);
        RCLabel u1 = labels[rng() % labels.size()], u2 = labels[rng() % labels.size()];
        RCLabel u3 = labels[rng() % labels.size()];
        State lhs = patch.apply(mu_finite(ctx, rho, s, u1, u2, O * gauge_A_RC(ctx, s0, s.cls, s.irrep, u3, u2)));
        rep.add("change ampli label", tag, lhs.distance(patch.apply(mu_finite(ctx, rho, s, u1, u3, O))), tol);
        State proj = patch.apply(mu_finite(ctx, rho, s, u2, u1, O * wigner_Du(ctx, s0, s.cls, s.irrep, u3)));
        State plain = patch.apply(mu_finite(ctx, rho, s, u2, u1, O));
        rep.add("ampli label projector", tag, proj.distance(u1 == u3 ? plain : plain * 0.0), tol);
    }
    Face end_face = rho.back().s1.f;
    RCLabel u = labels[rng() % labels.size()];
    double dv = 0, df = 0;
    for (Vtx w : R.Vdot) dv = std::max(dv, patch.apply(mu_finite(ctx, rho, s, u, u, vertex_A(ctx, w))).distance(patch));
    for (const Face &f : R.F) {
        if (f == s0.f || f == end_face) continue;
        df = std::max(df, patch.apply(mu_finite(ctx, rho, s, u, u, face_B(ctx, f))).distance(patch));
    }
    rep.add("chi preserves constraints (vertices)", tag, dv, tol);
    rep.add("chi preserves constraints (faces)", tag, df, tol);
    return rep;
}

Report check_transport(const Ctx &ctx, const Sector &s, std::uint64_t seed, int random_ops, double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    State patch = patch_state(ctx);
    const Ribbon &rho = R.fiducial;
    auto labels = labels_of(ctx, s);
    std::string tag = sector_name(*ctx.qd, s);
    // split right after the first direct triangle, so s' sits at v_1
    std::size_t k = 0;
    while (k < rho.size() && !rho[k].direct) k++;
    k++;
    Ribbon rho1 = prefix(rho, k), rest(rho.begin() + k, rho.end());
    Site s1 = rho1.back().s1;
    auto edges = edges_near(R, s1.v);
    auto more = edges_near(R, R.s0.v);
    edges.insert(edges.end(), more.begin(), more.end());
    for (int t = 0; t < random_ops; t++) {
        RCLabel u = labels[rng() % labels.size()], u2 = labels[rng() % labels.size()];
        Op O = random_local_op(ctx, edges, rng);
        Op T = transporter(ctx, rho1, s, u, u2);
        cplx lhs = patch.inner(patch.apply(mu_finite(ctx, rho, s, u, u, O)));
        cplx rhs = patch.inner(patch.apply(mu_finite(ctx, rest, s, u2, u2, T * O * T.adjoint())));
        rep.add("transport of anyons", tag + " lhs " + fmt(lhs.real()) + " rhs " + fmt(rhs.real()), std::abs(lhs - rhs), tol);
    }
    return rep;
}

Report check_decomposition(const Ctx &ctx, std::uint64_t seed, int random_ops, double tol) {
    const Region &R = ctx.R();
    std::mt19937_64 rng(seed);
    Report rep;
    auto sectors = all_sectors(*ctx.qd);
    if (sectors.size() < 3) throw InputError("decomposition check needs three sectors");
    Sector a = sectors[1], b = sectors[sectors.size() - 1], c = sectors[0];
    auto eta = [&](const Sector &s) {
        Boundary bd = boundary_family(ctx, s.cls, 1, seed)[0];
        return eta_uv(ctx, s.cls, s.irrep, labels_of(ctx, s).back(), {bd, 0});
    };
    // omega = 0.6 |psi1><psi1| + 0.4 |psi2><psi2|, psi1 an equal superposition of two sectors
    State psi1 = (eta(a) + eta(b)) * (1 / std::sqrt(2.0));
    State psi2 = eta(c);
    std::vector<std::pair<double, State>> mix{{0.6, psi1}, {0.4, psi2}};
    auto omega = [&](const Op &O) {
        cplx x = 0;
        for (const auto &[p, psi] : mix) x += p * psi.inner(psi.apply(O));
        return x;
    };
    std::map<Sector, double> expected{{a, 0.3}, {b, 0.3}, {c, 0.4}};
    double total = 0;
    std::vector<std::pair<Sector, double>> lam;
    for (const auto &s : sectors) {
        double l = omega(wigner_D(ctx, R.s0, s.cls, s.irrep)).real();
        total += l;
        double want = expected.count(s) ? expected[s] : 0.0;
        rep.add("decomposition of omega (weights)", sector_name(*ctx.qd, s), std::abs(l - want), tol);
        if (l > tol) lam.push_back({s, l});
    }
    rep.add("decomposition of omega (weights sum to one)", "", std::abs(total - 1), tol);
    auto inner = R.inner_edges(R.n - 1);
    for (int t = 0; t < random_ops; t++) {
        Op O = random_local_op(ctx, inner, rng);
        cplx sum = 0;
        for (const auto &[s, l] : lam) {
            Op D = wigner_D(ctx, R.s0, s.cls, s.irrep);
            sum += omega(D * O * D);
        }
        rep.add("decomposition of omega", "random local operator", std::abs(sum - omega(O)), tol);
    }
    for (const auto &[s, l] : lam) {
        Op D = wigner_D(ctx, R.s0, s.cls, s.irrep);
        double dd = std::abs(omega(D * D * D) / l - 1.0);
        Vtx w = R.Vdot[rng() % R.Vdot.size()];
        double da = std::abs(omega(D * vertex_A(ctx, w) * D) / l - 1.0);
        rep.add("omegaRC belongs to S^RC", sector_name(*ctx.qd, s), std::max(dd, da), tol);
    }
    return rep;
}

DetectionReport detection_matrix(const Ctx &ctx, std::size_t samples, double tol, std::uint64_t seed,
                                  std::size_t boundaries) {
    std::mt19937_64 rng(seed);
    DetectionReport rep;
    rep.tolerance = tol;
    rep.detectors = all_sectors(*ctx.qd);
    std::vector<Op> K;
    for (const auto &d : rep.detectors) K.push_back(charge_detector(ctx, ctx.R().boundary, d.cls, d.irrep));
    for (const auto &s : rep.detectors) {
        auto us = labels_of(ctx, s);
        auto vs = boundary_labels(ctx, s, boundaries, seed);
        std::vector<std::pair<RCLabel, std::size_t>> picks;
        if (samples == 0) {
            for (const auto &u : us)
                for (std::size_t k = 0; k < vs.size(); k++) picks.push_back({u, k});
        } else {
            for (std::size_t k = 0; k < samples; k++) picks.push_back({us[rng() % us.size()], rng() % vs.size()});
        }
        for (const auto &[u, k] : picks) {
            State eta = eta_uv(ctx, s.cls, s.irrep, u, vs[k]);
            std::vector<cplx> row;
            for (std::size_t d = 0; d < K.size(); d++) {
                cplx x = eta.inner(eta.apply(K[d]));
                row.push_back(x);
                rep.deviation = std::max(rep.deviation, std::abs(x - (rep.detectors[d] == s ? 1.0 : 0.0)));
            }
            rep.rows.push_back(sector_name(*ctx.qd, s) + " u" + label_str(u) + " v" + std::to_string(k));
            rep.row_sector.push_back(s);
            rep.values.push_back(row);
        }
    }
    return rep;
}

Violations violations(const State &psi, const Site &target, double tol) {
    const Ctx &ctx = psi.ctx();
    Violations out;
    for (Vtx v : ctx.R().V) {
        if (v == target.v) continue;
        if (psi.apply(vertex_A(ctx, v)).distance(psi) > tol) out.vertices.push_back(v);
    }
    for (const Face &f : ctx.R().F) {
        if (f == target.f) continue;
        if (psi.apply(face_B(ctx, f)).distance(psi) > tol) out.faces.push_back(f);
    }
    return out;
}

namespace {

/// Regains orbit compression at every bulk vertex that is neither the target nor violated.
State compress(const State &psi, const Site &target, const Violations &v) {
    const Ctx &ctx = psi.ctx();
    std::vector<Vtx> skip = v.vertices;
    skip.push_back(target.v);
    auto keep = frame_without(ctx, State::bulk_frame(ctx), skip);
    std::vector<int> frame;
    std::set_union(keep.begin(), keep.end(), psi.frame().begin(), psi.frame().end(), std::back_inserter(frame));
    return psi.projected(frame);
}

}  // namespace

SweepResult sweep(const State &psi, const Site &target, double tol) {
    const Ctx &ctx = psi.ctx();
    const Region &R = ctx.R();
    if (R.vertex_index(target.v) < 0 || hex_dist(target.v, R.s0.v) > R.n) throw InputError("target site outside the region");
    SweepResult res;
    res.state = psi.normalized();
    res.before = violations(res.state, target, tol);
    res.state = compress(res.state, target, res.before);
    Violations cur = res.before;
    std::size_t budget = 4 * cur.size() + 8;
    while (!cur.empty() && budget-- > 0) {
        State next;
        bool found = false;
        std::string what;
        if (!cur.vertices.empty()) {
            Vtx v = cur.vertices.front();
            Ribbon r = ribbon_between(R, target, v);
            for (int g = 0; g < ctx.G().order() && !found; g++) {
                State cand = res.state.apply(vertex_A(ctx, v) * ribbon_T(ctx, r, g));
                if (cand.norm() > tol) {
                    next = cand.normalized();
                    found = true;
                    what = "vertex " + to_string(v) + " via T^" + ctx.G().name(g);
                }
            }
        } else {
            Face f = cur.faces.front();
            auto vs = face_vertices(f);
            Vtx w = *std::min_element(vs.begin(), vs.end(),
                                      [&](Vtx a, Vtx b) { return hex_dist(a, target.v) < hex_dist(b, target.v); });
            Ribbon r = ribbon_between(R, target, w, &f);
            for (int h = 0; h < ctx.G().order() && !found; h++) {
                State cand = res.state.apply(face_B(ctx, f) * ribbon_L(ctx, r, h));
                if (cand.norm() > tol) {
                    next = cand.normalized();
                    found = true;
                    what = "face " + to_string(f) + " via L^" + ctx.G().name(h);
                }
            }
        }
        if (!found) {
            res.zero_branch = true;
            res.log.push_back("all candidates zero");
            break;
        }
        Violations after = violations(next, target, tol);
        next = compress(next, target, after);
        auto subset = [](const auto &a, const auto &b) {
            return std::all_of(a.begin(), a.end(), [&](const auto &x) { return std::find(b.begin(), b.end(), x) != b.end(); });
        };
        bool shrank = after.size() < cur.size() && subset(after.vertices, cur.vertices) && subset(after.faces, cur.faces);
        res.log.push_back(what + (shrank ? "" : " did not shrink the violation set"));
        res.state = next;
        cur = after;
        if (!shrank) break;
    }
    res.after = cur;
    return res;
}

}  // namespace qdlab
