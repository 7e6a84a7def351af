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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>

#include "qdlab/errors.hpp"
#include "qdlab/lattice.hpp"

using namespace qdlab;

namespace {

std::pair<double, double> cart(Vtx v) {
    return {v.a + 0.5 * v.b, v.b * std::sqrt(3.0) / 2};
}

std::pair<double, double> centroid(const Face &f) {
    double x = 0, y = 0;
    for (auto v : face_vertices(f)) {
        x += cart(v).first / 3;
        y += cart(v).second / 3;
    }
    return {x, y};
}

double cross(std::pair<double, double> o, std::pair<double, double> p, std::pair<double, double> q) {
    return (p.first - o.first) * (q.second - o.second) - (p.second - o.second) * (q.first - o.first);
}

std::vector<int> ints(const nlohmann::json &v) {
    return {v[0].get<int>(), v[1].get<int>()};
}

std::vector<int> ints(const nlohmann::json &u, const nlohmann::json &v) {
    return {u[0].get<int>(), u[1].get<int>(), v[0].get<int>(), v[1].get<int>()};
}

nlohmann::json golden(int n) {
    std::ifstream f(std::string(QDLAB_GOLDEN_DIR) + "/region_n" + std::to_string(n) + ".json");
    return nlohmann::json::parse(f);
}

std::set<std::vector<int>> vset(const std::vector<Vtx> &vs) {
    std::set<std::vector<int>> out;
    for (auto v : vs) {
        out.insert({v.a, v.b});
    }
    return out;
}

std::set<std::vector<int>> eset(const std::vector<Edge> &es) {
    std::set<std::vector<int>> out;
    for (auto e : es) {
        out.insert({e.from.a, e.from.b, e.to().a, e.to().b});
    }
    return out;
}

}  // namespace

TEST(lattice, regions_match_bruteforce_golden) {
    for (int n = 1; n <= 3; n++) {
        auto R = build_region(standard_site(), n);
        auto g = golden(n);
        std::set<std::vector<int>> gv, gdv, ge, gde;
        for (auto &v : g["V"]) gv.insert(ints(v));
        for (auto &v : g["dV"]) gdv.insert(ints(v));
        for (auto &e : g["E"]) ge.insert(ints(e[0], e[1]));
        for (auto &e : g["dE"]) gde.insert(ints(e[0], e[1]));
        EXPECT_EQ(vset(R.V), gv) << n;
        EXPECT_EQ(vset(R.dV), gdv) << n;
        EXPECT_EQ(eset(R.E), ge) << n;
        EXPECT_EQ(eset(R.dE), gde) << n;
        std::set<std::set<std::vector<int>>> gf, rf;
        for (auto &f : g["F"]) {
            std::set<std::vector<int>> s;
            for (auto &v : f) s.insert(ints(v));
            gf.insert(s);
        }
        for (const auto &f : R.F) {
            std::set<std::vector<int>> s;
            for (auto v : face_vertices(f)) s.insert({v.a, v.b});
            rf.insert(s);
        }
        EXPECT_EQ(rf, gf) << n;
        EXPECT_EQ((int)R.Vdot.size(), (int)g["counts"]["Vdot"]);
    }
}

TEST(lattice, small_region_counts) {
    auto R = build_region(standard_site(), 1);
    EXPECT_EQ(R.V.size(), 7u);
    EXPECT_EQ(R.Vdot.size(), 6u);
    EXPECT_EQ(R.F.size(), 24u);
    EXPECT_EQ(R.E.size(), 42u);
    EXPECT_EQ(R.dE.size(), 12u);
    EXPECT_EQ(R.Fdot.size(), 23u);
    EXPECT_THROW(build_region(standard_site(), 0), InputError);
}

TEST(lattice, regions_nest) {
    auto R1 = build_region(standard_site(), 1);
    auto R2 = build_region(standard_site(), 2);
    for (auto v : R1.V) EXPECT_GE(R2.vertex_index(v), 0);
    for (auto e : R1.E) EXPECT_TRUE(R2.contains(e));
    for (auto e : R1.dE) EXPECT_TRUE(R2.contains(e));
    auto inner = R2.inner_edges(1);
    EXPECT_EQ(inner.size(), R1.E.size());
}

TEST(lattice, canonical_edges_point_right) {
    for (int dir = 0; dir < 3; dir++) {
        Edge e{{2, -1}, dir};
        EXPECT_GT(cart(e.to()).first, cart(e.from).first);
        EXPECT_EQ(edge_between(e.to(), e.from), e);
        auto [f0, f1] = dual_edge(e);
        // e* runs from the face on the right of e to the face on its left.
        EXPECT_LT(cross(cart(e.from), cart(e.to()), centroid(f0)), 0);
        EXPECT_GT(cross(cart(e.from), cart(e.to()), centroid(f1)), 0);
    }
}

TEST(lattice, faces_are_counterclockwise) {
    for (bool up : {true, false}) {
        Face f{1, -2, up};
        auto vs = face_vertices(f);
        EXPECT_GT(cross(cart(vs[0]), cart(vs[1]), cart(vs[2])), 0);
        for (auto v : vs) {
            int k = face_index_around(v, f);
            ASSERT_GE(k, 0);
            EXPECT_EQ(face_around(v, k), f);
        }
    }
    // The face F_k around v has its centroid at angle 60k + 30 degrees.
    for (int k = 0; k < 6; k++) {
        auto c = centroid(face_around({0, 0}, k));
        double ang = std::atan2(c.second, c.first) * 180 / M_PI;
        EXPECT_NEAR(std::fmod(ang + 360, 360), 60 * k + 30, 1e-9);
    }
}

TEST(lattice, elementary_ribbons) {
    for (int k = 0; k < 6; k++) {
        Site s{{1, 1}, face_around({1, 1}, k)};
        auto tri = rho_triangle(s);
        auto star = rho_star(s);
        EXPECT_NO_THROW(validate_ribbon(tri));
        EXPECT_NO_THROW(validate_ribbon(star));
        EXPECT_EQ(tri.size(), 3u);
        EXPECT_EQ(star.size(), 6u);
        EXPECT_TRUE(is_closed(tri));
        EXPECT_TRUE(is_closed(star));
        EXPECT_EQ(tri.front().s0, s);
        EXPECT_EQ(star.front().s0, s);
        EXPECT_TRUE(tri[0].positive());
        EXPECT_FALSE(star[0].positive());
        auto path = direct_path(tri);
        ASSERT_EQ(path.size(), 3u);
        std::set<Edge> fe, pe;
        for (auto e : face_edges(s.f)) fe.insert(e);
        for (auto oe : path) pe.insert(edge_between(oe.from, oe.to));
        EXPECT_EQ(fe, pe);
        EXPECT_EQ(path.front().from, s.v);
        EXPECT_EQ(path.back().to, s.v);
        EXPECT_TRUE(direct_path(star).empty());
    }
}

TEST(lattice, reversal_and_concatenation) {
    auto R = build_region(standard_site(), 3);
    const Ribbon &r = R.fiducial;
    auto rr = reversed(r);
    EXPECT_NO_THROW(validate_ribbon(rr));
    auto p = direct_path(r), q = direct_path(rr);
    ASSERT_EQ(p.size(), q.size());
    for (std::size_t k = 0; k < p.size(); k++) {
        EXPECT_EQ(q[k], p[p.size() - 1 - k].reversed());
    }
    for (std::size_t cut = 1; cut < r.size(); cut++) {
        Ribbon a(r.begin(), r.begin() + cut), b(r.begin() + cut, r.end());
        EXPECT_EQ(a.front().s0, r.front().s0);
        EXPECT_EQ(b.back().s1, r.back().s1);
        EXPECT_EQ(a.back().s1, b.front().s0);
    }
}

TEST(lattice, validate_rejects_broken_ribbons) {
    auto R = build_region(standard_site(), 2);
    Ribbon r = R.fiducial;
    std::swap(r[0], r[1]);
    EXPECT_THROW(validate_ribbon(r), IdentityViolation);
    Ribbon mixed = rho_triangle(R.s0);
    auto star = rho_star(R.s0);
    mixed.insert(mixed.end(), star.begin(), star.end());
    EXPECT_THROW(validate_ribbon(mixed), IdentityViolation);
    Ribbon twice = rho_triangle(R.s0);
    auto again = rho_triangle(R.s0);
    twice.insert(twice.end(), again.begin(), again.end());
    EXPECT_THROW(validate_ribbon(twice), IdentityViolation);
}

class RegionFrames : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(RegionFrames, fiducial_and_boundary_invariants) {
    auto [k, n] = GetParam();
    auto R = build_region(rotated_site(k), n);
    // Fiducial ribbon: positive, from s0, straight along l1 to the ring, ends direct.
    EXPECT_EQ(R.fiducial.front().s0, R.s0);
    EXPECT_TRUE(R.fiducial.back().direct);
    for (const auto &t : R.fiducial) EXPECT_TRUE(t.positive());
    auto path = direct_path(R.fiducial);
    ASSERT_EQ((int)path.size(), n + 1);
    for (int i = 0; i <= n; i++) {
        EXPECT_EQ(path[i].from, R.at(i, 0));
        EXPECT_EQ(path[i].to, R.at(i + 1, 0));
    }
    EXPECT_EQ(hex_dist(R.sn.v, R.s0.v), n + 1);
    // l1 is perpendicular to the direction towards f0, with (l1, y) positive.
    auto c = centroid(R.s0.f);
    auto o = cart(R.s0.v), x = cart(R.at(1, 0));
    EXPECT_NEAR((x.first - o.first) * (c.first - o.first) + (x.second - o.second) * (c.second - o.second), 0, 1e-12);
    EXPECT_GT(cross(o, x, c), 0);

    // Boundary ribbon: closed, positive, based at s_n, counterclockwise over dE once.
    EXPECT_TRUE(is_closed(R.boundary));
    EXPECT_EQ(R.boundary.front().s0, R.sn);
    for (const auto &t : R.boundary) EXPECT_TRUE(t.positive());
    auto bp = direct_path(R.boundary);
    EXPECT_EQ(bp.size(), R.dE.size());
    EXPECT_EQ((int)bp.size(), 6 * (n + 1));
    std::set<Edge> seen;
    double area = 0;
    for (auto oe : bp) {
        seen.insert(edge_between(oe.from, oe.to));
        area += cross(cart(R.s0.v), cart(oe.from), cart(oe.to));
    }
    EXPECT_EQ(seen.size(), R.dE.size());
    EXPECT_GT(area, 0);
    for (const auto &t : R.boundary) EXPECT_TRUE(R.contains(t.e));
    for (const auto &t : R.fiducial) EXPECT_TRUE(R.contains(t.e));
}

INSTANTIATE_TEST_SUITE_P(all, RegionFrames,
                         ::testing::Combine(::testing::Range(0, 6), ::testing::Values(1, 2, 3)));

TEST(lattice, standard_fiducial_sequence) {
    auto R = build_region(standard_site(), 2);
    // One clockwise turn at v0, then direct, then two turns per intermediate vertex.
    std::string kinds;
    for (const auto &t : R.fiducial) kinds += t.direct ? 'D' : 'd';
    EXPECT_EQ(kinds, "dDddDddD");
    EXPECT_EQ(R.sn.f, (Face{2, 0, true}));
    std::string bk;
    for (const auto &t : R.boundary) bk += t.direct ? 'D' : 'd';
    // Opens direct; two turns at side vertices, one at corners, one to close.
    EXPECT_EQ(bk.front(), 'D');
    EXPECT_EQ(bk.back(), 'd');
    EXPECT_EQ(std::count(bk.begin(), bk.end(), 'd'), 12 * 2 + 5 + 1);
}
