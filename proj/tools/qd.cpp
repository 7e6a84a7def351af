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


#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qdlab/errors.hpp"
#include "qdlab/lab.hpp"

using namespace qdlab;
using json = nlohmann::ordered_json;

namespace {

constexpr const char *kSchema = "qdlab.report/1";

struct CliConfig {
    std::string command;
    std::string catalog;
    std::string group_file;
    std::string irreps_file;
    int n = 1;
    std::string sector;
    double tolerance = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    int samples = 0;
    int boundaries = 2;
    int violations = 2;
};

std::string hex(std::uint64_t h) {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

QuantumDouble load_qd(const CliConfig &cfg, bool validate) {
    if (cfg.catalog.empty() == cfg.group_file.empty()) throw InputError("give exactly one of --catalog or --group-file");
    FiniteGroup G = cfg.catalog.empty() ? load_group_file(cfg.group_file) : catalog_group(cfg.catalog);
    QuantumDouble qd(std::move(G));
    if (!cfg.irreps_file.empty()) load_irreps_file(cfg.irreps_file, qd, validate);
    return qd;
}

Ctx load_ctx(const CliConfig &cfg, bool validate = true) {
    if (cfg.n < 1) throw InputError("--n must be at least 1");
    return Ctx::make(load_qd(cfg, validate), build_region(standard_site(), cfg.n));
}

double tol_or(const CliConfig &cfg, double fallback) {
    return cfg.tolerance > 0 ? cfg.tolerance : fallback;
}

json config_json(const CliConfig &cfg) {
    json j;
    j["command"] = cfg.command;
    j["catalog"] = cfg.catalog;
    j["group_file"] = cfg.group_file;
    j["irreps_file"] = cfg.irreps_file;
    j["n"] = cfg.n;
    j["sector"] = cfg.sector;
    j["tolerance"] = cfg.tolerance;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["boundaries"] = cfg.boundaries;
    j["violations"] = cfg.violations;
    return j;
}

json vtx(Vtx v) {
    return json::array({v.a, v.b});
}

json report_json(const Report &rep) {
    json j;
    j["pass"] = rep.pass();
    j["worst_deviation"] = rep.worst();
    json lemmas = json::object();
    for (const auto &c : rep.checks) {
        auto &l = lemmas[c.lemma];
        if (l.is_null()) l = {{"checks", 0}, {"failed", 0}, {"worst_deviation", 0.0}, {"tolerance", c.tolerance}};
        l["checks"] = l["checks"].get<int>() + 1;
        if (!c.pass()) l["failed"] = l["failed"].get<int>() + 1;
        l["worst_deviation"] = std::max(l["worst_deviation"].get<double>(), c.deviation);
    }
    j["lemmas"] = lemmas;
    json fails = json::array();
    for (const auto &c : rep.checks) {
        if (!c.pass()) fails.push_back({{"lemma", c.lemma}, {"detail", c.detail}, {"deviation", c.deviation}, {"tolerance", c.tolerance}});
    }
    j["failed_checks"] = fails;
    return j;
}

struct Outcome {
    json result;
    bool pass = true;
    std::vector<std::string> failures;  // one line per violated lemma
    std::vector<std::vector<std::string>> table;  // first row is the header
};

void absorb(Outcome &out, const Report &rep, const std::string &key) {
    out.result[key] = report_json(rep);
    out.pass = out.pass && rep.pass();
    for (const auto &c : rep.checks) {
        if (!c.pass()) {
            std::ostringstream ss;
            ss << "FAIL [" << c.lemma << "] " << c.detail << ": deviation " << c.deviation << " > " << c.tolerance;
            out.failures.push_back(ss.str());
        }
    }
    if (out.table.empty()) out.table.push_back({"lemma", "detail", "deviation", "tolerance", "pass"});
    for (const auto &c : rep.checks) {
        std::ostringstream d, t;
        d << c.deviation;
        t << c.tolerance;
        out.table.push_back({c.lemma, c.detail, d.str(), t.str(), c.pass() ? "1" : "0"});
    }
}

std::vector<Sector> chosen_sectors(const CliConfig &cfg, const QuantumDouble &qd) {
    if (cfg.sector.empty()) return all_sectors(qd);
    return {parse_sector(qd, cfg.sector)};
}

Outcome run_group(const CliConfig &cfg) {
    QuantumDouble qd = load_qd(cfg, true);
    const FiniteGroup &G = qd.group();
    Outcome out;
    json classes = json::array();
    for (const auto &C : G.classes()) {
        json el = json::array(), cen = json::array();
        for (int g : C.elements) el.push_back(G.name(g));
        for (int g : C.centralizer) cen.push_back(G.name(g));
        classes.push_back({{"id", C.id}, {"representative", G.name(C.rep)}, {"elements", el}, {"centralizer", cen}});
    }
    json labels = json::array();
    long long dim_sum = 0;
    out.table.push_back({"label", "class", "irrep", "class_size", "dim"});
    for (const auto &l : qd.labels()) {
        labels.push_back({{"name", l.name}, {"class", l.cls}, {"irrep", l.irrep}, {"class_size", l.class_size}, {"dim", l.dim}});
        dim_sum += (long long)l.class_size * l.dim * l.class_size * l.dim;
        out.table.push_back({l.name, std::to_string(l.cls), std::to_string(l.irrep), std::to_string(l.class_size),
                             std::to_string(l.dim)});
    }
    long long want = (long long)G.order() * G.order();
    out.result["group"] = G.label();
    out.result["order"] = G.order();
    out.result["abelian"] = G.is_abelian();
    out.result["classes"] = classes;
    out.result["labels"] = labels;
    out.result["label_count"] = labels.size();
    out.result["dimension_sum"] = dim_sum;
    out.result["order_squared"] = want;
    if (dim_sum != want) {
        out.pass = false;
        out.failures.push_back("FAIL [quantum double dimension] sum of (|C| dim R)^2 = " + std::to_string(dim_sum) +
                               " != |G|^2 = " + std::to_string(want));
    }
    return out;
}

Outcome run_lattice(const CliConfig &cfg) {
    if (cfg.n < 1) throw InputError("--n must be at least 1");
    Region R = build_region(standard_site(), cfg.n);
    Outcome out;
    auto site = [](const Site &s) { return json{{"v", vtx(s.v)}, {"f", json::array({s.f.a, s.f.b, s.f.up})}}; };
    auto ribbon = [&](const Ribbon &r) {
        json a = json::array();
        for (const auto &t : r) {
            a.push_back({{"direct", t.direct}, {"s0", site(t.s0)}, {"s1", site(t.s1)}, {"edge", to_string(t.e)}});
        }
        return a;
    };
    json vs = json::array(), dvs = json::array(), es = json::array(), fs = json::array(), des = json::array();
    for (Vtx v : R.V) vs.push_back(vtx(v));
    for (Vtx v : R.dV) dvs.push_back(vtx(v));
    out.table.push_back({"index", "edge"});
    for (std::size_t i = 0; i < R.E.size(); i++) {
        es.push_back({{"from", vtx(R.E[i].from)}, {"to", vtx(R.E[i].to())}});
        out.table.push_back({std::to_string(i), to_string(R.E[i])});
    }
    for (const Face &f : R.F) fs.push_back(to_string(f));
    for (int i : R.dE_index) des.push_back(i);
    out.result["n"] = R.n;
    out.result["s0"] = site(R.s0);
    out.result["counts"] = {{"V", R.V.size()},   {"Vdot", R.Vdot.size()}, {"dV", R.dV.size()}, {"F", R.F.size()},
                            {"Fdot", R.Fdot.size()}, {"E", R.E.size()},       {"dE", R.dE.size()}};
    out.result["vertices"] = vs;
    out.result["boundary_vertices"] = dvs;
    out.result["edges"] = es;
    out.result["faces"] = fs;
    out.result["boundary_edges"] = des;
    out.result["fiducial"] = ribbon(R.fiducial);
    out.result["boundary"] = ribbon(R.boundary);
    return out;
}

Outcome run_verify(const CliConfig &cfg) {
    Ctx ctx = load_ctx(cfg, false);
    Outcome out;
    double tol = tol_or(cfg, 1e-10);
    absorb(out, verify_schur(*ctx.qd, tol), "schur");
    Report ids = verify_identities(ctx, cfg.seed, cfg.samples > 0 ? cfg.samples : 6, tol);
    absorb(out, ids, "identities");
    return out;
}

Outcome run_etas(const CliConfig &cfg) {
    Ctx ctx = load_ctx(cfg);
    double tol = tol_or(cfg, 1e-9);
    std::vector<State> etas;
    json rows = json::array();
    for (const auto &s : chosen_sectors(cfg, *ctx.qd)) {
        int d = ctx.qd->irrep(s.cls, s.irrep).dim;
        auto bs = boundary_family(ctx, s.cls, cfg.boundaries, cfg.seed);
        for (const auto &u : site_labels(*ctx.qd, s.cls, s.irrep)) {
            for (std::size_t k = 0; k < bs.size(); k++) {
                for (int jp = 0; jp < d; jp++) {
                    etas.push_back(eta_uv(ctx, s.cls, s.irrep, u, {bs[k], jp}));
                    rows.push_back({{"sector", sector_name(*ctx.qd, s)}, {"u", json::array({u.i, u.j})},
                                    {"boundary", k}, {"jp", jp}});
                }
            }
        }
    }
    Outcome out;
    json gram = json::array();
    double dev = 0;
    for (std::size_t a = 0; a < etas.size(); a++) {
        json row = json::array();
        std::vector<std::string> trow;
        for (std::size_t b = 0; b < etas.size(); b++) {
            cplx x = etas[a].inner(etas[b]);
            dev = std::max(dev, std::abs(x - (a == b ? 1.0 : 0.0)));
            row.push_back(json::array({x.real(), x.imag()}));
            std::ostringstream ss;
            ss << std::fixed << std::setprecision(6) << x.real();
            trow.push_back(ss.str());
        }
        gram.push_back(row);
        out.table.push_back(trow);
    }
    out.result["basis"] = rows;
    out.result["gram"] = gram;
    out.result["deviation"] = dev;
    out.result["tolerance"] = tol;
    if (dev > tol) {
        out.pass = false;
        std::ostringstream ss;
        ss << "FAIL [etas form ONB] Gram matrix deviates from identity by " << dev << " > " << tol;
        out.failures.push_back(ss.str());
    }
    return out;
}

Outcome run_detect(const CliConfig &cfg) {
    Ctx ctx = load_ctx(cfg);
    if (cfg.n < 2) throw InputError("detection needs --n 2 or more");
    DetectionReport rep = detection_matrix(ctx, cfg.samples, tol_or(cfg, 1e-9), cfg.seed, cfg.boundaries);
    Outcome out;
    std::size_t k = rep.detectors.size();
    std::vector<std::vector<double>> matrix(k, std::vector<double>(k, 0.0));
    std::vector<int> count(k, 0);
    json names = json::array();
    for (const auto &d : rep.detectors) names.push_back(sector_name(*ctx.qd, d));
    json rows = json::array();
    for (std::size_t r = 0; r < rep.rows.size(); r++) {
        std::size_t s = std::find(rep.detectors.begin(), rep.detectors.end(), rep.row_sector[r]) - rep.detectors.begin();
        json vals = json::array();
        for (std::size_t d = 0; d < k; d++) {
            matrix[s][d] += rep.values[r][d].real();
            vals.push_back(json::array({rep.values[r][d].real(), rep.values[r][d].imag()}));
        }
        count[s]++;
        rows.push_back({{"state", rep.rows[r]}, {"values", vals}});
    }
    json mj = json::array();
    std::vector<std::string> header{"sector"};
    for (const auto &nm : names) header.push_back(nm.get<std::string>());
    out.table.push_back(header);
    for (std::size_t s = 0; s < k; s++) {
        json row = json::array();
        std::vector<std::string> trow{names[s].get<std::string>()};
        for (std::size_t d = 0; d < k; d++) {
            double v = count[s] ? matrix[s][d] / count[s] : 0.0;
            if (std::abs(v) < 1e-12) v = 0;
            row.push_back(v);
            std::ostringstream ss;
            ss << std::fixed << std::setprecision(6) << v;
            trow.push_back(ss.str());
        }
        mj.push_back(row);
        out.table.push_back(trow);
    }
    out.result["sectors"] = names;
    out.result["matrix"] = mj;
    out.result["samples"] = rows;
    out.result["deviation"] = rep.deviation;
    out.result["tolerance"] = rep.tolerance;
    if (!rep.pass()) {
        out.pass = false;
        std::ostringstream ss;
        ss << "FAIL [detection Lemma] matrix deviates from the Kronecker pattern by " << rep.deviation;
        out.failures.push_back(ss.str());
    }
    return out;
}

Outcome run_ampli(const CliConfig &cfg) {
    Ctx ctx = load_ctx(cfg);
    double tol = tol_or(cfg, 1e-9);
    int ops = cfg.samples > 0 ? cfg.samples : 3;
    Outcome out;
    Report mu, cons, magic, gs, tr;
    for (const auto &s : chosen_sectors(cfg, *ctx.qd)) {
        RCLabel u = site_labels(*ctx.qd, s.cls, s.irrep).front();
        mu.merge(check_mu_properties(ctx, s, cfg.seed, 2, tol));
        cons.merge(check_anyon_state_consistency(ctx, s, u, ops, cfg.seed, tol));
        magic.merge(verify_magic(ctx, s, 1, ops, cfg.seed, tol));
        gs.merge(check_ground_state_actions(ctx, s, cfg.seed, tol));
        tr.merge(check_transport(ctx, s, cfg.seed, ops, tol));
    }
    absorb(out, mu, "ampli_properties");
    absorb(out, cons, "anyon_state_consistency");
    absorb(out, magic, "magic_map");
    absorb(out, gs, "ground_state_actions");
    absorb(out, tr, "transport");
    if (cfg.sector.empty() && all_sectors(*ctx.qd).size() >= 3) absorb(out, check_decomposition(ctx, cfg.seed, ops, tol), "decomposition");
    return out;
}

Outcome run_sweep(const CliConfig &cfg) {
    Ctx ctx = load_ctx(cfg);
    double tol = tol_or(cfg, 1e-9);
    const Region &R = ctx.R();
    std::mt19937_64 rng(cfg.seed);
    State psi = patch_state(ctx);
    auto inner = R.inner_edges(std::max(0, R.n - 1));
    json injected = json::array();
    int N = ctx.G().order();
    for (int k = 0; k < cfg.violations; k++) {
        const Edge &e = R.E[inner[rng() % inner.size()]];
        int x = 1 + rng() % (N - 1);
        bool flux = rng() % 2;
        psi = psi.apply(flux ? edge_L(ctx, e, x) : edge_T(ctx, e, x));
        injected.push_back({{"kind", flux ? "L" : "T"}, {"edge", to_string(e)}, {"element", ctx.G().name(x)}});
    }
    if (psi.norm() < tol) throw InputError("injected operators annihilate the patch state; pick another --seed");
    SweepResult res = sweep(psi, R.s0, tol);
    auto vj = [](const Violations &v) {
        json a = json::array(), f = json::array();
        for (Vtx x : v.vertices) a.push_back(to_string(x));
        for (const Face &x : v.faces) f.push_back(to_string(x));
        return json{{"vertices", a}, {"faces", f}};
    };
    Outcome out;
    out.result["target"] = to_string(R.s0);
    out.result["injected"] = injected;
    out.result["before"] = vj(res.before);
    out.result["after"] = vj(res.after);
    out.result["log"] = res.log;
    out.result["zero_branch"] = res.zero_branch;
    out.table.push_back({"step"});
    for (const auto &l : res.log) out.table.push_back({l});
    if (res.zero_branch) {
        out.pass = false;
        out.failures.push_back("FAIL [remove star violation / remove face violation] every candidate vanished");
    }
    if (!res.after.empty()) {
        out.pass = false;
        out.failures.push_back("FAIL [remove star violation / remove face violation] " + std::to_string(res.after.size()) +
                               " violations remain away from the target");
    }
    return out;
}

std::string csv_cell(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render(const CliConfig &cfg, const Outcome &out, const json &doc) {
    std::ostringstream ss;
    if (cfg.format == "json") {
        ss << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        for (const auto &row : out.table) {
            for (std::size_t i = 0; i < row.size(); i++) ss << (i ? "," : "") << csv_cell(row[i]);
            ss << "\n";
        }
    } else {
        ss << "qd " << cfg.command << ": " << (out.pass ? "PASS" : "FAIL") << "\n";
        for (const auto &row : out.table) {
            for (std::size_t i = 0; i < row.size(); i++) ss << (i ? "  " : "") << row[i];
            ss << "\n";
        }
    }
    return ss.str();
}

int dispatch(CliConfig &cfg) {
    if (cfg.tolerance < 0) throw InputError("--tolerance must be positive");
    Outcome out;
    if (cfg.command == "group") {
        out = run_group(cfg);
    } else if (cfg.command == "lattice") {
        out = run_lattice(cfg);
    } else if (cfg.command == "verify") {
        out = run_verify(cfg);
    } else if (cfg.command == "etas") {
        out = run_etas(cfg);
    } else if (cfg.command == "detect") {
        out = run_detect(cfg);
    } else if (cfg.command == "ampli") {
        out = run_ampli(cfg);
    } else {
        out = run_sweep(cfg);
    }
    std::uint64_t hash = fnv1a(cfg.command.data(), cfg.command.size());
    if (cfg.command != "lattice") {
        hash = load_qd(cfg, false).content_hash();
    }
    json doc;
    doc["schema"] = kSchema;
    doc["config"] = config_json(cfg);
    doc["input_hash"] = hex(hash);
    doc["pass"] = out.pass;
    std::vector<std::string> lemmas;
    for (const auto &f : out.failures) lemmas.push_back(f);
    doc["failures"] = lemmas;
    doc["result"] = out.result;
    std::string text = render(cfg, out, doc);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw InputError("cannot write " + cfg.out);
        f << text;
    }
    for (const auto &f : out.failures) std::cerr << f << "\n";
    return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact finite-volume lab for the quantum double model on the triangular lattice"};
    app.require_subcommand(1);
    CliConfig cfg;
    auto add_common = [&](CLI::App *sub, bool region) {
        auto *cat = sub->add_option("--catalog", cfg.catalog, "Catalog group name");
        auto *file = sub->add_option("--group-file", cfg.group_file, "Multiplication table file");
        cat->excludes(file);
        sub->add_option("--irreps-file", cfg.irreps_file, "Irrep table file");
        if (region) sub->add_option("--n", cfg.n, "Region radius");
        sub->add_option("--sector", cfg.sector, "Anyon sector, as a label name or class:irrep");
        sub->add_option("--tolerance", cfg.tolerance, "Override the pinned tolerance");
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
        sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--samples", cfg.samples, "Samples per check (0 means the default or exhaustive)");
        sub->add_option("--boundaries", cfg.boundaries, "Boundary conditions per class");
    };
    add_common(app.add_subcommand("group", "Classes, centralizers and anyon labels"), false);
    auto *lattice = app.add_subcommand("lattice", "Dump the region");
    lattice->add_option("--n", cfg.n, "Region radius");
    lattice->add_option("--seed", cfg.seed, "Unused");
    lattice->add_option("--out", cfg.out, "Write the report here instead of stdout");
    lattice->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    add_common(app.add_subcommand("verify", "Ribbon and projector identity suite plus Schur relations"), true);
    add_common(app.add_subcommand("etas", "Gram matrix of the eta basis"), true);
    add_common(app.add_subcommand("detect", "Charge detection matrix"), true);
    add_common(app.add_subcommand("ampli", "Amplimorphism, magic map and transport experiments"), true);
    auto *sw = app.add_subcommand("sweep", "Inject violations and sweep them onto the origin site");
    add_common(sw, true);
    sw->add_option("--violations", cfg.violations, "Number of injected edge operators");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cfg);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IdentityViolation &e) {
        std::cerr << "FAIL " << e.what() << "\n";
        return 1;
    }
}
