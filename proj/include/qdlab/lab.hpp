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


#ifndef QDLAB_LAB_HPP
#define QDLAB_LAB_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdlab/ops.hpp"
#include "qdlab/state.hpp"
#include "qdlab/stringnet.hpp"

namespace qdlab {

struct Sector {
    int cls = 0;
    int irrep = 0;
    auto operator<=>(const Sector &) const = default;
};

std::vector<Sector> all_sectors(const QuantumDouble &qd);
std::string sector_name(const QuantumDouble &qd, const Sector &s);
/// Parses "cls:irrep" or an anyon label name.
Sector parse_sector(const QuantumDouble &qd, const std::string &text);

/// One named comparison with its worst deviation.
struct Check {
    std::string lemma;
    std::string detail;
    double deviation = 0;
    double tolerance = 0;
    bool pass() const {
        return deviation <= tolerance;
    }
};

struct Report {
    std::vector<Check> checks;

    void add(const std::string &lemma, const std::string &detail, double deviation, double tolerance);
    void merge(const Report &other);
    bool pass() const;
    double worst() const;
    /// Lemma names of failing checks, deduplicated in order.
    std::vector<std::string> failures() const;
};

/// Every configuration of `support` over a random background when there are at most `limit`, else random samples.
std::vector<Config> probe_configs(const Ctx &ctx, const std::vector<int> &support, std::mt19937_64 &rng,
                                  std::size_t samples, std::size_t limit = 4096);
double op_distance(const Op &a, const Op &b, const std::vector<Config> &probes);
double op_distance(const Ctx &ctx, const Op &a, const Op &b, std::mt19937_64 &rng, std::size_t samples,
                   std::size_t limit = 4096);

/// Random ribbon inside the region; sign 0 allows either orientation, kinds bit 1 direct, bit 2 dual.
Ribbon sample_ribbon(const Region &R, std::mt19937_64 &rng, int length, int sign = 0, int kinds = 3);
/// Positive ribbon from `from` along a shortest vertex path to `to`, optionally turning onto `end_face`.
Ribbon ribbon_between(const Region &R, const Site &from, Vtx to, const Face *end_face = nullptr);
/// Random product of edge, gauge and flux operators supported on the given edges.
Op random_monomial(const Ctx &ctx, const std::vector<int> &edges, std::mt19937_64 &rng, int factors = 3);
/// Random complex combination of random monomials.
Op random_local_op(const Ctx &ctx, const std::vector<int> &edges, std::mt19937_64 &rng, int terms = 3, int factors = 2);

/// Trivial-sector string net on the region: the finite stand-in for the ground state.
State patch_state(const Ctx &ctx);

struct Expectation {
    cplx value = 0;
    double spread = 0;  // max deviation across boundary labels
};

/// <eta^{RC;uv}| O |eta^{RC;uv}> on the region for O supported on E_{n-1}, compared across boundary labels v.
Expectation restricted_expectation(const Ctx &ctx, const Sector &s, RCLabel u, const Op &O, std::size_t boundaries = 3,
                                   std::uint64_t seed = 0);

/// (|N_C|/dimR)^2 sum_v F^{u1 v}* O F^{u2 v}.
Op mu_finite(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u1, RCLabel u2, const Op &O);
/// (dimR/|N_C|)^2 sum_{w,z} F^{u w} O F^{z w}* A^{z v} D^{v}, with A and D at the start site of r.
Op t_map(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u, RCLabel v, const Op &O);
/// (|N_C|/dimR) sum_w (A_{s'}^{w u2})* (F_{r}^{u w})*, s' the end site of r.
Op transporter(const Ctx &ctx, const Ribbon &r, const Sector &s, RCLabel u, RCLabel u2);

/// Items 1-5 of the amplimorphism properties plus positivity.
Report check_mu_properties(const Ctx &ctx, const Sector &s, std::uint64_t seed, int trials, double tol = 1e-10);
/// Patch expectation of mu^{uu}(O) along the fiducial ribbon against the eta expectation of O.
Report check_anyon_state_consistency(const Ctx &ctx, const Sector &s, RCLabel u, int random_ops, std::uint64_t seed,
                                     double tol = 1e-9);
/// chi^{u1 v1}(t^{u2 v2}(O)) |patch> = delta delta O |patch> with t on a prefix of the fiducial ribbon.
Report verify_magic(const Ctx &ctx, const Sector &s, int prefix, int random_ops, std::uint64_t seed, double tol = 1e-10);
/// Ribbon and amplimorphism label changers and projectors acting on the patch state.
Report check_ground_state_actions(const Ctx &ctx, const Sector &s, std::uint64_t seed, double tol = 1e-10);
/// Transport of the anyon state from the origin site to a later site of the fiducial ribbon.
Report check_transport(const Ctx &ctx, const Sector &s, std::uint64_t seed, int random_ops, double tol = 1e-9);
/// D^{RC}-decomposition of a mixed constrained state.
Report check_decomposition(const Ctx &ctx, std::uint64_t seed, int random_ops, double tol = 1e-9);

struct DetectionReport {
    std::vector<Sector> detectors;
    std::vector<std::string> rows;
    std::vector<Sector> row_sector;
    std::vector<std::vector<cplx>> values;
    double tolerance = 0;
    double deviation = 0;
    bool pass() const {
        return deviation <= tolerance;
    }
};

/// <eta^{RC;uv}| K^{R'C'} |eta^{RC;uv}> over the boundary ribbon. samples 0 takes every (u, v).
DetectionReport detection_matrix(const Ctx &ctx, std::size_t samples, double tol = 1e-9, std::uint64_t seed = 0,
                                  std::size_t boundaries = 2);

struct Violations {
    std::vector<Vtx> vertices;
    std::vector<Face> faces;
    bool empty() const {
        return vertices.empty() && faces.empty();
    }
    std::size_t size() const {
        return vertices.size() + faces.size();
    }
};

/// Vertices of V and faces of F (other than those of `target`) whose constraint fails on psi.
Violations violations(const State &psi, const Site &target, double tol = 1e-9);

struct SweepResult {
    State state;
    Violations before;
    Violations after;
    std::vector<std::string> log;
    bool zero_branch = false;
};

/// Moves every violation onto `target` one at a time: A_v T^g or B_f L^h along a ribbon from the target.
SweepResult sweep(const State &psi, const Site &target, double tol = 1e-9);

/// The identity suite over the ribbon and projector algebra. Probes are exhaustive over the joint support of each
/// comparison when there are at most `exhaustive_limit` of them.
Report verify_identities(const Ctx &ctx, std::uint64_t seed, int samples, double tol = 1e-10, std::size_t probes = 24,
                         std::size_t exhaustive_limit = 4096);
Report verify_schur(const QuantumDouble &qd, double tol = 1e-10);

}  // namespace qdlab

#endif
