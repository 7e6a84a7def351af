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


#include <algorithm>

#include "qdlab/errors.hpp"
#include "qdlab/lab.hpp"

namespace qdlab {

namespace {

struct Suite {
    const Ctx &ctx;
    std::mt19937_64 rng;
    double tol;
    Report rep;
    std::size_t probes = 24;
    std::size_t limit = 4096;

    const FiniteGroup &G() const {
        return ctx.G();
    }
    int rand(int n) {
        return (int)(rng() % n);
    }
    bool interior(Vtx v) const {
        for (int d = 0; d < 6; d++) {
            if (ctx.R().index(edge_between(v, v + step(d))) < 0) return false;
        }
        return true;
    }
    /// Ribbon with distinct end vertices and faces, both ends away from the region boundary.
    Ribbon ribbon(int len, int sign) {
        for (int attempt = 0; attempt < 2000; attempt++) {
            Ribbon r = sample_ribbon(ctx.R(), rng, len, sign);
            Site a = r.front().s0, b = r.back().s1;
            if (interior(a.v) && interior(b.v) && a.v != b.v && a.f != b.f) return r;
        }
        throw InputError("region too small for a ribbon of length " + std::to_string(len));
    }
    Site site() {
        for (;;) {
            Vtx v = ctx.R().V[rng() % ctx.R().V.size()];
            if (interior(v)) return {v, face_around(v, rand(6))};
        }
    }
    void expect(const std::string &lemma, const std::string &detail, const Op &a, const Op &b) {
        rep.add(lemma, detail, op_distance(ctx, a, b, rng, probes, limit), tol);
    }
};

std::string sign_name(int sign) {
    return sign > 0 ? "positive" : "negative";
}

void ribbon_algebra(Suite &S, int samples) {
    const FiniteGroup &G = S.G();
    int N = G.order();
    const Ctx &ctx = S.ctx;
    for (int sign : {1, -1}) {
        for (int t = 0; t < samples; t++) {
            Ribbon r = S.ribbon(2 + t % 4, sign);
            std::string tag = sign_name(sign) + " length " + std::to_string(r.size());
            int h = S.rand(N), hp = S.rand(N), g = S.rand(N), gp = S.rand(N), k = S.rand(N);
            if (t % 2) gp = g;
            auto F = [&](int a, int b) { return ribbon_F(ctx, r, a, b); };
            int hh = sign > 0 ? G.mul(hp, h) : G.mul(h, hp);
            S.expect("F elementary props (product)", tag, F(h, g) * F(hp, gp), g == gp ? F(hh, g) : Op::zero());
            S.expect("F elementary props (adjoint)", tag, F(h, g).adjoint(), F(G.inv(h), g));

            Site s0 = r.front().s0, s1 = r.back().s1;
            auto A = [&](Site s, int x) { return site_A(ctx, s, x); };
            auto B = [&](Site s, int x) { return site_B(ctx, s, x); };
            S.expect("[A,F] and [B,F] (A at start)", tag, A(s0, k) * F(h, g), F(G.conj(k, h), G.mul(k, g)) * A(s0, k));
            S.expect("[A,F] and [B,F] (A at end)", tag, A(s1, k) * F(h, g), F(h, G.mul(g, G.inv(k))) * A(s1, k));
            int b0 = sign > 0 ? G.mul(h, k) : G.mul(k, h);
            int gh = G.mul(G.inv(g), G.mul(G.inv(h), g));
            int b1 = sign > 0 ? G.mul(k, gh) : G.mul(gh, k);
            S.expect("[A,F] and [B,F] (B at start)", tag, B(s0, k) * F(h, g), F(h, g) * B(s0, b0));
            S.expect("[A,F] and [B,F] (B at end)", tag, B(s1, k) * F(h, g), F(h, g) * B(s1, b1));

            Site away = S.site();
            if (away.v != s0.v && away.v != s1.v) {
                S.expect("[A,F] and [B,F] (A away from the ends)", tag, A(away, k) * F(h, g), F(h, g) * A(away, k));
            }
            bool visited = false;
            for (const auto &tri : r) visited = visited || tri.s0 == away || tri.s1 == away;
            if (away.f != s0.f && away.f != s1.f) {
                int l = visited ? 0 : k;
                S.expect("[A,F] and [B,F] (B away from the ends)", tag, B(away, l) * F(h, g), F(h, g) * B(away, l));
            }

            Op L = ribbon_L(ctx, r, h), T = ribbon_T(ctx, r, g);
            S.expect("F = LT = TL", tag, L * T, F(h, g));
            S.expect("F = LT = TL", tag, T * L, F(h, g));
            S.expect("A and B commute with T", tag + " start", A(s0, k) * T, ribbon_T(ctx, r, G.mul(k, g)) * A(s0, k));
            S.expect("A and B commute with T", tag + " end", A(s1, k) * T, ribbon_T(ctx, r, G.mul(g, G.inv(k))) * A(s1, k));
            Site s = S.site();
            S.expect("A and B commute with T", tag + " flux", B(s, k) * T, T * B(s, k));
            int hs = sign > 0 ? G.mul(h, k) : G.mul(k, h);
            S.expect("flux change by L", tag, B(s0, k) * L, L * B(s0, hs));

            Ribbon rest(r.begin() + 1, r.end());
            Op first;
            if (r[0].direct) {
                std::vector<std::pair<cplx, Op>> terms;
                for (int x = 0; x < N; x++) {
                    terms.push_back({1, triangle_T(ctx, r[0], x) * ribbon_L(ctx, rest, G.conj(G.inv(x), h))});
                }
                first = Op::sum(terms);
            } else {
                first = triangle_L(ctx, r[0], h) * ribbon_L(ctx, rest, h);
            }
            S.expect(std::string("L decomposition (initial ") + (r[0].direct ? "direct" : "dual") + " triangle)", tag,
                     first, L);

            int split = 1 + S.rand((int)r.size() - 1);
            Ribbon r1(r.begin(), r.begin() + split), r2(r.begin() + split, r.end());
            std::vector<std::pair<cplx, Op>> glue;
            for (int x = 0; x < N; x++) {
                glue.push_back({1, ribbon_F(ctx, r1, h, x) * ribbon_F(ctx, r2, G.conj(G.inv(x), h), G.mul(G.inv(x), g))});
            }
            S.expect("F splits along a ribbon", tag, Op::sum(glue), F(h, g));

            Site end = t % 2 ? s0 : s1;
            std::vector<std::pair<cplx, Op>> a, b;
            for (int x = 0; x < N; x++) {
                a.push_back({(double)N, ribbon_T(ctx, r, x) * vertex_A(ctx, end.v) * ribbon_T(ctx, r, x)});
                b.push_back({1, ribbon_L(ctx, r, G.inv(x)) * face_B(ctx, end.f) * ribbon_L(ctx, r, x)});
            }
            S.expect("sweep identities (vertex)", tag, Op::sum(a), Op::identity());
            S.expect("sweep identities (face)", tag, Op::sum(b), Op::identity());
        }
    }
}

void site_algebra(Suite &S, int samples) {
    const FiniteGroup &G = S.G();
    int N = G.order();
    const Ctx &ctx = S.ctx;
    for (int t = 0; t < samples; t++) {
        Site s = S.site();
        std::string tag = to_string(s);
        int h = S.rand(N), hp = S.rand(N);
        S.expect("Aelementary", tag, site_A(ctx, s, h) * site_A(ctx, s, hp), site_A(ctx, s, G.mul(h, hp)));
        S.expect("Aelementary", tag + " adjoint", site_A(ctx, s, h).adjoint(), site_A(ctx, s, G.inv(h)));
        S.expect("Belementary", tag, site_B(ctx, s, h) * site_B(ctx, s, hp), h == hp ? site_B(ctx, s, h) : Op::zero());
        std::vector<std::pair<cplx, Op>> bs;
        for (int g = 0; g < N; g++) bs.push_back({1, site_B(ctx, s, g)});
        S.expect("Belementary", tag + " resolution", Op::sum(bs), Op::identity());
        S.expect("ABonsamesite", tag, site_A(ctx, s, h) * site_B(ctx, s, hp),
                 site_B(ctx, s, G.conj(h, hp)) * site_A(ctx, s, h));
    }
}

void projector_algebra(Suite &S, int samples) {
    const Ctx &ctx = S.ctx;
    const QuantumDouble &qd = *ctx.qd;
    Site s = S.site();
    std::vector<std::pair<cplx, Op>> total;
    for (const auto &sec : all_sectors(qd)) {
        std::string tag = sector_name(qd, sec);
        Op D = wigner_D(ctx, s, sec.cls, sec.irrep);
        total.push_back({1, D});
        S.expect("DRCprops (idempotent)", tag, D * D, D);
        S.expect("DRCprops (selfadjoint)", tag, D.adjoint(), D);
        auto labels = site_labels(qd, sec.cls, sec.irrep);
        std::vector<std::pair<cplx, Op>> parts;
        for (const auto &u1 : labels) {
            Op Du = wigner_Du(ctx, s, sec.cls, sec.irrep, u1);
            parts.push_back({1, Du});
            RCLabel u2 = labels[S.rand((int)labels.size())];
            S.expect("DRC decomposes into DRCu (orthogonal)", tag, Du * wigner_Du(ctx, s, sec.cls, sec.irrep, u2),
                     u1 == u2 ? Du : Op::zero());
        }
        S.expect("DRC decomposes into DRCu", tag, Op::sum(parts), D);
        Site o = S.site();
        if (o.v != s.v) S.expect("a and B commute with A_v and B_f", tag + " A_v", D * vertex_A(ctx, o.v), vertex_A(ctx, o.v) * D);
        if (o.f != s.f) S.expect("a and B commute with A_v and B_f", tag + " B_f", D * face_B(ctx, o.f), face_B(ctx, o.f) * D);
    }
    S.expect("DRCprops (resolution)", "", Op::sum(total), Op::identity());

    for (int t = 0; t < samples; t++) {
        auto secs = all_sectors(qd);
        Sector sec = secs[S.rand((int)secs.size())];
        auto labels = site_labels(qd, sec.cls, sec.irrep);
        double ratio = double(qd.irrep(sec.cls, sec.irrep).dim) / qd.cls(sec.cls).centralizer_order();
        Ribbon r = S.ribbon(4, 0);
        Ribbon r1(r.begin(), r.begin() + 2), r2(r.begin() + 2, r.end());
        RCLabel u = labels[S.rand((int)labels.size())], w = labels[S.rand((int)labels.size())];
        std::vector<std::pair<cplx, Op>> glue, dd;
        for (const auto &v : labels) {
            glue.push_back({1 / ratio, ribbon_F_RC(ctx, r1, sec.cls, sec.irrep, u, v) * ribbon_F_RC(ctx, r2, sec.cls, sec.irrep, v, w)});
            dd.push_back({1, ribbon_F_RC(ctx, r, sec.cls, sec.irrep, u, v).adjoint() * ribbon_F_RC(ctx, r, sec.cls, sec.irrep, w, v)});
        }
        std::string tag = sector_name(qd, sec);
        S.expect("decomposition of F", tag, Op::sum(glue), ribbon_F_RC(ctx, r, sec.cls, sec.irrep, u, w));
        S.expect("FdaggerF identity", tag, Op::sum(dd), u == w ? Op::identity() * (ratio * ratio) : Op::zero());
    }

    const Ribbon &beta = ctx.R().boundary;
    std::vector<Op> K;
    std::vector<std::pair<cplx, Op>> ksum;
    for (const auto &sec : all_sectors(qd)) {
        K.push_back(charge_detector(ctx, beta, sec.cls, sec.irrep));
        ksum.push_back({1, K.back()});
    }
    for (std::size_t a = 0; a < K.size(); a++) {
        std::size_t b = S.rng() % K.size();
        S.expect("basic properties of K (selfadjoint)", "", K[a].adjoint(), K[a]);
        S.expect("basic properties of K (orthogonal)", "", K[a] * K[b], a == b ? K[a] : Op::zero());
    }
    S.expect("basic properties of K (resolution)", "", Op::sum(ksum), Op::identity());
}

}  // namespace

Report verify_identities(const Ctx &ctx, std::uint64_t seed, int samples, double tol, std::size_t probes,
                         std::size_t exhaustive_limit) {
    Suite S{ctx, std::mt19937_64(seed), tol, {}, probes, exhaustive_limit};
    ribbon_algebra(S, samples);
    site_algebra(S, samples);
    projector_algebra(S, std::max(1, samples / 2));
    return S.rep;
}

Report verify_schur(const QuantumDouble &qd, double tol) {
    Report rep;
    for (const auto &C : qd.group().classes()) {
        SchurReport s = schur_verify(C.local_mult, qd.irreps(C.id));
        double dev = std::max(s.schur_dev, s.schur2_dev);
        if (s.dim_sum != s.order) dev = std::max(dev, 1.0);
        rep.add("Schur orthogonality", "class " + std::to_string(C.id) + ": " + s.describe(), dev, tol);
    }
    return rep;
}

}  // namespace qdlab
