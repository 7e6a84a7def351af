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

#include "qdlab/group.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "catalog_detail.hpp"
#include "qdlab/errors.hpp"

namespace qdlab {

std::uint64_t fnv1a(const void *data, std::size_t len, std::uint64_t h) {
    auto p = static_cast<const unsigned char *>(data);
    for (std::size_t k = 0; k < len; k++) {
        h ^= p[k];
        h *= 1099511628211ull;
    }
    return h;
}

FiniteGroup FiniteGroup::from_table(
    std::vector<std::vector<int>> mult, std::vector<std::string> names, std::string label) {
    int n = (int)mult.size();
    if (n == 0) {
        throw InputError("group table is empty");
    }
    for (const auto &row : mult) {
        if ((int)row.size() != n) {
            throw InputError("group table is not square");
        }
        for (int x : row) {
            if (x < 0 || x >= n) {
                throw InputError("group table entry " + std::to_string(x) + " out of range");
            }
        }
    }
    if (!names.empty() && (int)names.size() != n) {
        throw InputError("names block has " + std::to_string(names.size()) + " entries, expected " + std::to_string(n));
    }

    int e = -1;
    for (int a = 0; a < n && e < 0; a++) {
        bool ok = true;
        for (int b = 0; b < n && ok; b++) {
            ok = mult[a][b] == b && mult[b][a] == b;
        }
        if (ok) {
            e = a;
        }
    }
    if (e < 0) {
        throw InputError("identity/inverse law violated: no two-sided identity");
    }
    for (int a = 0; a < n; a++) {
        bool found = false;
        for (int b = 0; b < n && !found; b++) {
            found = mult[a][b] == e && mult[b][a] == e;
        }
        if (!found) {
            throw InputError("identity/inverse law violated: element " + std::to_string(a) + " has no inverse");
        }
    }
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            for (int c = 0; c < n; c++) {
                if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) {
                    std::ostringstream ss;
                    ss << "non-associative table at (" << a << "," << b << "," << c << ")";
                    throw InputError(ss.str());
                }
            }
        }
    }

    // Relocate the identity to index 0 by swapping it with element 0.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[e]);

    FiniteGroup G;
    G.n_ = n;
    G.label_ = std::move(label);
    G.mult_.assign(n * n, 0);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            G.mult_[perm[a] * n + perm[b]] = perm[mult[a][b]];
        }
    }
    G.inv_.assign(n, 0);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (G.mul(a, b) == 0) {
                G.inv_[a] = b;
            }
        }
    }
    G.names_.assign(n, "");
    for (int a = 0; a < n; a++) {
        G.names_[perm[a]] = names.empty() ? std::to_string(a) : names[a];
    }
    G.derive_classes();
    return G;
}

void FiniteGroup::derive_classes() {
    classes_.clear();
    class_of_.assign(n_, -1);
    for (int g = 0; g < n_; g++) {
        if (class_of_[g] >= 0) {
            continue;
        }
        ConjugacyClass C;
        C.id = (int)classes_.size();
        for (int x = 0; x < n_; x++) {
            C.elements.push_back(conj(x, g));
        }
        std::sort(C.elements.begin(), C.elements.end());
        C.elements.erase(std::unique(C.elements.begin(), C.elements.end()), C.elements.end());
        C.rep = C.elements[0];
        C.label.assign(n_, -1);
        for (int i = 0; i < C.size(); i++) {
            C.label[C.elements[i]] = i;
            class_of_[C.elements[i]] = C.id;
        }
        for (int c : C.elements) {
            for (int x = 0; x < n_; x++) {
                if (conj(x, C.rep) == c) {
                    C.q.push_back(x);
                    break;
                }
            }
        }
        C.local.assign(n_, -1);
        for (int x = 0; x < n_; x++) {
            if (mul(x, C.rep) == mul(C.rep, x)) {
                C.local[x] = (int)C.centralizer.size();
                C.centralizer.push_back(x);
            }
        }
        int m = C.centralizer_order();
        C.local_mult.assign(m, std::vector<int>(m));
        for (int a = 0; a < m; a++) {
            for (int b = 0; b < m; b++) {
                C.local_mult[a][b] = C.local[mul(C.centralizer[a], C.centralizer[b])];
            }
        }
        classes_.push_back(std::move(C));
    }
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; a++) {
        for (int b = 0; b < a; b++) {
            if (mul(a, b) != mul(b, a)) {
                return false;
            }
        }
    }
    return true;
}

std::pair<int, int> FiniteGroup::decompose_qn(int class_id, int g) const {
    const ConjugacyClass &C = classes_.at(class_id);
    int i = C.label[conj(g, C.rep)];
    int m = mul(inv_[C.q[i]], g);
    if (i < 0 || C.local[m] < 0) {
        throw IdentityViolation("unique g=qn lemma: no decomposition for element " + std::to_string(g));
    }
    return {i, m};
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; a++) {
        for (int b = 0; b < n_; b++) {
            t[a][b] = mul(a, b);
        }
    }
    return t;
}

std::uint64_t FiniteGroup::content_hash() const {
    return fnv1a(mult_.data(), mult_.size() * sizeof(int));
}

namespace detail {

std::vector<std::array<int, 3>> s3_perms() {
    std::vector<std::array<int, 3>> out;
    std::array<int, 3> p{0, 1, 2};
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

namespace {

FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            t[a][b] = (a + b) % n;
        }
    }
    return FiniteGroup::from_table(t, {}, "Z" + std::to_string(n));
}

std::string cycle_name(const std::array<int, 3> &p) {
    std::string s;
    std::vector<bool> seen(3, false);
    for (int x = 0; x < 3; x++) {
        if (seen[x] || p[x] == x) {
            continue;
        }
        s += "(";
        for (int y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            s += std::to_string(y + 1);
        }
        s += ")";
    }
    return s.empty() ? "e" : s;
}

FiniteGroup s3() {
    auto ps = detail::s3_perms();
    int n = (int)ps.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; a++) {
        names.push_back(cycle_name(ps[a]));
        for (int b = 0; b < n; b++) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; x++) {
                c[x] = ps[a][ps[b][x]];
            }
            t[a][b] = (int)(std::find(ps.begin(), ps.end(), c) - ps.begin());
        }
    }
    return FiniteGroup::from_table(t, names, "S3");
}

FiniteGroup d4() {
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    std::vector<std::string> names(8);
    for (int f = 0; f < 2; f++) {
        for (int k = 0; k < 4; k++) {
            int a = detail::d4_index(k, f);
            names[a] = (k ? "r" + (k > 1 ? std::to_string(k) : std::string()) : std::string()) + (f ? "s" : "");
            if (names[a].empty()) {
                names[a] = "e";
            }
            for (int g = 0; g < 2; g++) {
                for (int l = 0; l < 4; l++) {
                    t[a][detail::d4_index(l, g)] = detail::d4_index(k + (f ? -l : l), f ^ g);
                }
            }
        }
    }
    return FiniteGroup::from_table(t, names, "D4");
}

FiniteGroup q8() {
    // Units 1,i,j,k as 0..3; unit_mul[u][v] = (sign, unit).
    const int um[4][4][2] = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
        {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
        {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
        {{0, 3}, {0, 2}, {1, 1}, {1, 0}},
    };
    const char *un[4] = {"1", "i", "j", "k"};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    std::vector<std::string> names(8);
    for (int u = 0; u < 4; u++) {
        for (int s = 0; s < 2; s++) {
            int a = detail::q8_index(u, s);
            names[a] = std::string(s ? "-" : "") + un[u];
            for (int v = 0; v < 4; v++) {
                for (int r = 0; r < 2; r++) {
                    t[a][detail::q8_index(v, r)] = detail::q8_index(um[u][v][1], s ^ r ^ um[u][v][0]);
                }
            }
        }
    }
    return FiniteGroup::from_table(t, names, "Q8");
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (int n = 1; n <= 12; n++) {
        out.push_back("Z" + std::to_string(n));
    }
    out.insert(out.end(), {"S3", "D4", "Q8"});
    return out;
}

FiniteGroup catalog_group(const std::string &name) {
    if (name == "S3") {
        return s3();
    }
    if (name == "D4") {
        return d4();
    }
    if (name == "Q8") {
        return q8();
    }
    if (name.size() >= 2 && name[0] == 'Z') {
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (const std::exception &) {
            n = 0;
        }
        if (n >= 1 && n <= 12 && std::to_string(n) == name.substr(1)) {
            return cyclic(n);
        }
    }
    throw InputError("unknown catalog group '" + name + "'");
}

FiniteGroup parse_group(std::istream &in, const std::string &label) {
    std::string word;
    int n = 0;
    if (!(in >> word) || word != "order" || !(in >> n) || n <= 0) {
        throw InputError("group file: expected 'order N' header");
    }
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (!(in >> t[a][b])) {
                throw InputError("group file: table truncated at row " + std::to_string(a));
            }
        }
    }
    std::vector<std::string> names;
    if (in >> word) {
        if (word != "names") {
            throw InputError("group file: unexpected token '" + word + "'");
        }
        for (int a = 0; a < n; a++) {
            if (!(in >> word)) {
                throw InputError("group file: names block truncated");
            }
            names.push_back(word);
        }
        if (in >> word) {
            throw InputError("group file: trailing token '" + word + "'");
        }
    }
    return FiniteGroup::from_table(t, names, label);
}

FiniteGroup load_group_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw InputError("cannot open group file " + path);
    }
    return parse_group(f, path);
}

}  // namespace qdlab
