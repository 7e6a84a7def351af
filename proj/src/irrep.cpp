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

#include "qdlab/irrep.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "catalog_detail.hpp"
#include "qdlab/errors.hpp"

namespace qdlab {

namespace {

std::string fmt_num(double x) {
    std::ostringstream ss;
    ss << std::setprecision(6) << x;
    return ss.str();
}

int element_order(const std::vector<std::vector<int>> &mult, int g) {
    int k = 1;
    for (int x = g; x != 0; x = mult[x][g]) {
        k++;
    }
    return g == 0 ? 1 : k;
}

Eigen::MatrixXcd s3_matrix(const std::array<int, 3> &p) {
    Eigen::Matrix<double, 3, 2> U;
    U << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
    Eigen::Matrix3d P = Eigen::Matrix3d::Zero();
    for (int x = 0; x < 3; x++) {
        P(p[x], x) = 1;
    }
    Eigen::Matrix2d M = U.transpose() * P * U;
    return M.cast<cplx>();
}

Eigen::MatrixXcd d4_matrix(int k, int f) {
    Eigen::Matrix2cd r, s;
    r << 0, -1, 1, 0;
    s << 1, 0, 0, -1;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    for (int t = 0; t < k; t++) {
        m = m * r;
    }
    if (f) {
        m = m * s;
    }
    return m;
}

Eigen::MatrixXcd q8_matrix(int unit, int sign) {
    const cplx I(0, 1);
    Eigen::Matrix2cd m;
    switch (unit) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << I, 0, 0, -I;
            break;
        case 2:
            m << 0, 1, -1, 0;
            break;
        default:
            m << 0, I, I, 0;
            break;
    }
    return sign ? Eigen::MatrixXcd(-m) : Eigen::MatrixXcd(m);
}

// Global element index -> 2-dim matrix, for the non-abelian catalog groups.
std::vector<Eigen::MatrixXcd> two_dim_realization(const FiniteGroup &G) {
    std::vector<Eigen::MatrixXcd> out;
    const std::string &l = G.label();
    // Catalog groups are generated with the identity at index 0, so the
    // detail orderings apply unchanged.
    if (l == "S3") {
        for (const auto &p : detail::s3_perms()) {
            out.push_back(s3_matrix(p));
        }
    } else if (l == "D4") {
        out.resize(8);
        for (int f = 0; f < 2; f++) {
            for (int k = 0; k < 4; k++) {
                out[detail::d4_index(k, f)] = d4_matrix(k, f);
            }
        }
    } else if (l == "Q8") {
        out.resize(8);
        for (int u = 0; u < 4; u++) {
            for (int s = 0; s < 2; s++) {
                out[detail::q8_index(u, s)] = q8_matrix(u, s);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Irrep> one_dim_irreps(const std::vector<std::vector<int>> &mult) {
    int n = (int)mult.size();
    int e = 1;
    for (int g = 0; g < n; g++) {
        e = std::lcm(e, element_order(mult, g));
    }
    // Greedy generating set.
    std::vector<int> gens;
    std::vector<bool> in_sub(n, false);
    in_sub[0] = true;
    auto close = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; a++) {
                if (!in_sub[a]) {
                    continue;
                }
                for (int g : gens) {
                    if (!in_sub[mult[a][g]]) {
                        in_sub[mult[a][g]] = true;
                        grew = true;
                    }
                }
            }
        }
    };
    for (int g = 1; g < n; g++) {
        if (!in_sub[g]) {
            gens.push_back(g);
            close();
        }
    }

    std::vector<Irrep> out;
    std::vector<int> ks(gens.size(), 0);
    while (true) {
        std::vector<int> val(n, -1);
        val[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t h = 0; h < queue.size(); h++) {
            int a = queue[h];
            for (std::size_t t = 0; t < gens.size(); t++) {
                int b = mult[a][gens[t]];
                if (val[b] < 0) {
                    val[b] = (val[a] + ks[t]) % e;
                    queue.push_back(b);
                }
            }
        }
        bool hom = true;
        for (int a = 0; a < n && hom; a++) {
            for (int b = 0; b < n && hom; b++) {
                hom = val[mult[a][b]] == (val[a] + val[b]) % e;
            }
        }
        if (hom) {
            Irrep R;
            R.dim = 1;
            bool trivial = true;
            std::ostringstream nm;
            for (int a = 0; a < n; a++) {
                trivial = trivial && val[a] == 0;
                double ang = 2 * M_PI * val[a] / e;
                Eigen::MatrixXcd m(1, 1);
                // Snap exact values so small groups have exact characters.
                double c = std::cos(ang), s = std::sin(ang);
                if (std::abs(c) < 1e-15) c = 0;
                if (std::abs(s) < 1e-15) s = 0;
                m(0, 0) = cplx(c, s);
                R.mats.push_back(m);
            }
            R.name = trivial ? "triv" : "chi" + std::to_string(out.size());
            out.push_back(std::move(R));
        }
        std::size_t t = 0;
        while (t < ks.size() && ++ks[t] == e) {
            ks[t++] = 0;
        }
        if (t == ks.size()) {
            break;
        }
    }
    return out;
}

std::vector<Irrep> catalog_irreps(const FiniteGroup &G, const ConjugacyClass &C) {
    auto irreps = one_dim_irreps(C.local_mult);
    int sq = (int)irreps.size();
    if (sq != C.centralizer_order()) {
        auto real = two_dim_realization(G);
        if (real.empty() || C.centralizer_order() != G.order()) {
            throw InputError(
                "centralizer of class " + std::to_string(C.id) + " is non-abelian and not in the catalog; supply an irrep file");
        }
        Irrep R;
        R.name = "std";
        R.dim = 2;
        for (int g : C.centralizer) {
            R.mats.push_back(real[g]);
        }
        irreps.push_back(std::move(R));
    }
    validate_irreps(C.local_mult, irreps);
    return irreps;
}

void check_irrep_shapes(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps) {
    int n = (int)mult.size();
    for (const Irrep &R : irreps) {
        if ((int)R.mats.size() != n) {
            throw InputError("irrep " + R.name + ": expected " + std::to_string(n) + " matrices");
        }
        for (int a = 0; a < n; a++) {
            if (R.mats[a].rows() != R.dim || R.mats[a].cols() != R.dim) {
                throw InputError("irrep " + R.name + ": matrix " + std::to_string(a) + " has wrong shape");
            }
        }
    }
}

void validate_irreps(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps) {
    check_irrep_shapes(mult, irreps);
    int n = (int)mult.size();
    int dim_sum = 0;
    for (const Irrep &R : irreps) {
        for (int a = 0; a < n; a++) {
            double u = (R.mats[a] * R.mats[a].adjoint() - Eigen::MatrixXcd::Identity(R.dim, R.dim)).cwiseAbs().maxCoeff();
            if (u > 1e-12) {
                throw InputError("non-unitary: irrep " + R.name + " at element " + std::to_string(a));
            }
            for (int b = 0; b < n; b++) {
                double h = (R.mats[a] * R.mats[b] - R.mats[mult[a][b]]).cwiseAbs().maxCoeff();
                if (h > 1e-12) {
                    throw InputError(
                        "not a homomorphism: irrep " + R.name + " at (" + std::to_string(a) + "," + std::to_string(b) + ")");
                }
            }
        }
        double s = 0;
        for (int a = 0; a < n; a++) {
            s += std::norm(R.chi(a));
        }
        s /= n;
        if (std::abs(s - 1) > 1e-10) {
            throw InputError("reducible: norm-squared character sum = " + fmt_num(s));
        }
        dim_sum += R.dim * R.dim;
    }
    if (dim_sum != n) {
        throw InputError(
            "incomplete irrep set: sum of squared dimensions = " + std::to_string(dim_sum) + ", expected " + std::to_string(n));
    }
}

std::string SchurReport::describe() const {
    std::ostringstream ss;
    ss << "Schur max deviation " << schur_dev;
    if (worst[0] >= 0) {
        ss << " at (R1,R2,j,k,l,m)=(" << worst[0] << "," << worst[1] << "," << worst[2] << "," << worst[3] << ","
           << worst[4] << "," << worst[5] << ")";
    }
    ss << "; Schur2 max deviation " << schur2_dev;
    if (worst2[0] >= 0) {
        ss << " at (h1,h2)=(" << worst2[0] << "," << worst2[1] << ")";
    }
    ss << "; sum dim^2 = " << dim_sum << " of " << order;
    return ss.str();
}

SchurReport schur_verify(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps) {
    int n = (int)mult.size();
    SchurReport rep;
    rep.order = n;
    for (std::size_t r1 = 0; r1 < irreps.size(); r1++) {
        const Irrep &A = irreps[r1];
        rep.dim_sum += A.dim * A.dim;
        for (std::size_t r2 = 0; r2 < irreps.size(); r2++) {
            const Irrep &B = irreps[r2];
            for (int j = 0; j < A.dim; j++) {
                for (int k = 0; k < A.dim; k++) {
                    for (int l = 0; l < B.dim; l++) {
                        for (int m = 0; m < B.dim; m++) {
                            cplx s = 0;
                            for (int h = 0; h < n; h++) {
                                s += A.at(j, k, h) * std::conj(B.at(l, m, h));
                            }
                            double want = (r1 == r2 && j == l && k == m) ? double(n) / A.dim : 0.0;
                            double d = std::abs(s - want);
                            if (d > rep.schur_dev) {
                                rep.schur_dev = d;
                                int w[6] = {(int)r1, (int)r2, j, k, l, m};
                                std::copy(w, w + 6, rep.worst);
                            }
                        }
                    }
                }
            }
        }
    }
    std::vector<int> inv(n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (mult[a][b] == 0) {
                inv[a] = b;
            }
        }
    }
    for (int h1 = 0; h1 < n; h1++) {
        int zsize = 0;
        for (int x = 0; x < n; x++) {
            zsize += mult[x][h1] == mult[h1][x];
        }
        for (int h2 = 0; h2 < n; h2++) {
            bool conj = false;
            for (int x = 0; x < n && !conj; x++) {
                conj = mult[mult[x][h1]][inv[x]] == h2;
            }
            cplx s = 0;
            for (const Irrep &R : irreps) {
                s += R.chi(h1) * std::conj(R.chi(h2));
            }
            double d = std::abs(s - (conj ? double(zsize) : 0.0));
            if (d > rep.schur2_dev) {
                rep.schur2_dev = d;
                rep.worst2[0] = h1;
                rep.worst2[1] = h2;
            }
        }
    }
    return rep;
}

QuantumDouble::QuantumDouble(FiniteGroup g) : G_(std::move(g)) {
    for (const auto &C : G_.classes()) {
        try {
            irreps_.push_back(catalog_irreps(G_, C));
            loaded_.push_back(true);
        } catch (const InputError &) {
            irreps_.emplace_back();
            loaded_.push_back(false);
        }
    }
}

void QuantumDouble::set_irreps(int cls, std::vector<Irrep> irreps, bool validate) {
    if (cls < 0 || cls >= (int)irreps_.size()) {
        throw InputError("irrep file: class " + std::to_string(cls) + " out of range");
    }
    if (validate) {
        validate_irreps(G_.classes()[cls].local_mult, irreps);
    } else {
        check_irrep_shapes(G_.classes()[cls].local_mult, irreps);
    }
    irreps_[cls] = std::move(irreps);
    loaded_[cls] = true;
}

std::vector<AnyonLabel> QuantumDouble::labels() const {
    std::vector<AnyonLabel> out;
    for (const auto &C : G_.classes()) {
        if (!loaded_[C.id]) {
            throw InputError("no irreps for the centralizer of class " + std::to_string(C.id) + "; supply an irrep file");
        }
        for (std::size_t r = 0; r < irreps_[C.id].size(); r++) {
            AnyonLabel a;
            a.cls = C.id;
            a.irrep = (int)r;
            a.class_size = C.size();
            a.dim = irreps_[C.id][r].dim;
            a.name = "[" + G_.name(C.rep) + "|" + irreps_[C.id][r].name + "]";
            out.push_back(a);
        }
    }
    return out;
}

void QuantumDouble::check_dimension_identity() const {
    long s = 0;
    for (const auto &a : labels()) {
        s += long(a.class_size * a.dim) * (a.class_size * a.dim);
    }
    long g = G_.order();
    if (s != g * g) {
        throw IdentityViolation("D(G) dimension identity: sum (|C| dim R)^2 = " + std::to_string(s) + ", expected " +
                                std::to_string(g * g));
    }
}

std::uint64_t QuantumDouble::content_hash() const {
    std::uint64_t h = G_.content_hash();
    for (const auto &list : irreps_) {
        for (const auto &R : list) {
            for (const auto &m : R.mats) {
                h = fnv1a(m.data(), sizeof(cplx) * m.size(), h);
            }
        }
    }
    return h;
}

cplx parse_complex(const std::string &tok) {
    std::string t = tok;
    if (t.empty()) {
        throw InputError("empty complex literal");
    }
    auto bad = [&]() { return InputError("bad complex literal '" + tok + "'"); };
    if (t.back() != 'i') {
        std::size_t pos = 0;
        double re = 0;
        try {
            re = std::stod(t, &pos);
        } catch (const std::exception &) {
            throw bad();
        }
        if (pos != t.size()) {
            throw bad();
        }
        return {re, 0};
    }
    t.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto num = [&](const std::string &s) -> double {
        if (s.empty() || s == "+") return 1;
        if (s == "-") return -1;
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception &) {
            throw bad();
        }
        if (pos != s.size()) {
            throw bad();
        }
        return v;
    };
    if (split == std::string::npos) {
        return {0, num(t)};
    }
    return {num(t.substr(0, split)), num(t.substr(split))};
}

void load_irreps(std::istream &in, QuantumDouble &qd, bool validate) {
    std::map<int, std::vector<Irrep>> blocks;
    int cls = 0;
    std::string word;
    while (in >> word) {
        if (word == "class") {
            if (!(in >> cls)) {
                throw InputError("irrep file: expected class index");
            }
            if (cls < 0 || cls >= (int)qd.group().classes().size()) {
                throw InputError("irrep file: class " + std::to_string(cls) + " out of range");
            }
        } else if (word == "irrep") {
            Irrep R;
            std::string kw;
            if (!(in >> R.name >> kw >> R.dim) || kw != "dim" || R.dim <= 0) {
                throw InputError("irrep file: expected 'irrep <name> dim <d>'");
            }
            int n = qd.cls(cls).centralizer_order();
            for (int a = 0; a < n; a++) {
                Eigen::MatrixXcd m(R.dim, R.dim);
                for (int r = 0; r < R.dim; r++) {
                    for (int c = 0; c < R.dim; c++) {
                        if (!(in >> word)) {
                            throw InputError("irrep file: block " + R.name + " truncated");
                        }
                        m(r, c) = parse_complex(word);
                    }
                }
                R.mats.push_back(m);
            }
            blocks[cls].push_back(std::move(R));
        } else {
            throw InputError("irrep file: unexpected token '" + word + "'");
        }
    }
    for (auto &[c, list] : blocks) {
        qd.set_irreps(c, std::move(list), validate);
    }
}

void load_irreps_file(const std::string &path, QuantumDouble &qd, bool validate) {
    std::ifstream f(path);
    if (!f) {
        throw InputError("cannot open irrep file " + path);
    }
    load_irreps(f, qd, validate);
}

}  // namespace qdlab
