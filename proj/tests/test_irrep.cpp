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

#include <iomanip>
#include <sstream>

#include "qdlab/errors.hpp"
#include "qdlab/irrep.hpp"

using namespace qdlab;

namespace {

const ConjugacyClass &identity_class(const FiniteGroup &G) {
    return G.classes()[0];
}

}  // namespace

TEST(irrep, z2_trivial_and_sign) {
    QuantumDouble qd(catalog_group("Z2"));
    const auto &irr = qd.irreps(0);
    ASSERT_EQ(irr.size(), 2u);
    EXPECT_EQ(irr[0].name, "triv");
    EXPECT_EQ(irr[0].chi(1), cplx(1, 0));
    EXPECT_EQ(irr[1].chi(1), cplx(-1, 0));
    auto rep = schur_verify(identity_class(qd.group()).local_mult, irr);
    EXPECT_EQ(rep.schur_dev, 0.0);
    EXPECT_EQ(rep.schur2_dev, 0.0);
    EXPECT_TRUE(rep.pass());
}

TEST(irrep, s3_character_table) {
    QuantumDouble qd(catalog_group("S3"));
    const auto &G = qd.group();
    const auto &irr = qd.irreps(0);
    ASSERT_EQ(irr.size(), 3u);
    std::vector<int> dims;
    for (const auto &R : irr) {
        dims.push_back(R.dim);
    }
    EXPECT_EQ(dims, (std::vector<int>{1, 1, 2}));
    // Hand-entered table over (e, transposition, 3-cycle).
    const double table[3][3] = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
    for (int r = 0; r < 3; r++) {
        for (int g = 0; g < 6; g++) {
            int c = G.class_of(g);
            EXPECT_NEAR(std::abs(irr[r].chi(g) - cplx(table[r][c], 0)), 0, 1e-12) << r << " " << g;
        }
    }
    auto rep = schur_verify(identity_class(G).local_mult, irr);
    EXPECT_LE(rep.schur_dev, 1e-12);
    EXPECT_LE(rep.schur2_dev, 1e-12);
}

TEST(irrep, all_catalog_centralizers_complete_and_orthogonal) {
    for (const auto &name : catalog_names()) {
        QuantumDouble qd(catalog_group(name));
        for (const auto &C : qd.group().classes()) {
            auto rep = schur_verify(C.local_mult, qd.irreps(C.id));
            EXPECT_TRUE(rep.pass()) << name << " class " << C.id << ": " << rep.describe();
            EXPECT_EQ(qd.irreps(C.id)[0].name, "triv");
        }
    }
}

TEST(irrep, rejects_reducible_table) {
    auto Z3 = catalog_group("Z3");
    QuantumDouble qd(Z3);
    std::ostringstream ss;
    ss << std::setprecision(17) << "irrep rot dim 2\n";
    for (int k = 0; k < 3; k++) {
        double a = 2 * M_PI * k / 3;
        ss << std::cos(a) << " " << -std::sin(a) << "\n" << std::sin(a) << " " << std::cos(a) << "\n";
    }
    std::istringstream in(ss.str());
    try {
        load_irreps(in, qd);
        FAIL() << "accepted a reducible representation";
    } catch (const InputError &e) {
        EXPECT_EQ(std::string(e.what()), "reducible: norm-squared character sum = 2");
    }
}

TEST(irrep, rejects_incomplete_and_non_unitary) {
    QuantumDouble qd(catalog_group("Z2"));
    std::istringstream only_triv("irrep t dim 1\n1\n1\n");
    EXPECT_THROW(load_irreps(only_triv, qd), InputError);
    std::istringstream scaled("irrep t dim 1\n1\n1\nirrep s dim 1\n1\n-2\n");
    EXPECT_THROW(load_irreps(scaled, qd), InputError);
    std::istringstream nonhom("irrep t dim 1\n1\n1\nirrep s dim 1\n1\n0+1i\n");
    EXPECT_THROW(load_irreps(nonhom, qd), InputError);
}

TEST(irrep, loads_valid_file_for_class) {
    QuantumDouble qd(catalog_group("Z4"));
    std::istringstream in("class 1\nirrep a dim 1\n1 1 1 1\nirrep b dim 1\n1 0+1i -1 -i\n"
                          "irrep c dim 1\n1 -1 1 -1\nirrep d dim 1\n1 -i -1 i\n");
    load_irreps(in, qd);
    EXPECT_EQ(qd.irreps(1)[1].name, "b");
    EXPECT_EQ(qd.irreps(1)[1].chi(1), cplx(0, 1));
}

TEST(irrep, corrupted_entry_is_flagged) {
    QuantumDouble qd(catalog_group("S3"));
    auto irr = qd.irreps(0);
    irr[2].mats[3](0, 1) += 0.25;
    auto rep = schur_verify(qd.group().classes()[0].local_mult, irr);
    EXPECT_FALSE(rep.pass());
    EXPECT_GT(rep.schur_dev, 1e-3);
    EXPECT_EQ(rep.worst[0], 2);
    EXPECT_EQ(rep.worst[1], 2);
    EXPECT_NE(rep.describe().find("(R1,R2,j,k,l,m)"), std::string::npos);
}

TEST(irrep, complex_literals) {
    EXPECT_EQ(parse_complex("1"), cplx(1, 0));
    EXPECT_EQ(parse_complex("-0.5+2i"), cplx(-0.5, 2));
    EXPECT_EQ(parse_complex("3-1e-3i"), cplx(3, -1e-3));
    EXPECT_EQ(parse_complex("i"), cplx(0, 1));
    EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
    EXPECT_EQ(parse_complex("1e-2+1e+1i"), cplx(1e-2, 10));
    EXPECT_THROW(parse_complex("x"), InputError);
}

TEST(irrep, anyon_label_counts) {
    struct Case {
        const char *name;
        std::size_t labels;
    };
    for (auto c : {Case{"Z1", 1}, Case{"Z2", 4}, Case{"S3", 8}, Case{"Z3", 9}, Case{"D4", 22}, Case{"Q8", 22}}) {
        QuantumDouble qd(catalog_group(c.name));
        EXPECT_EQ(qd.labels().size(), c.labels) << c.name;
        EXPECT_NO_THROW(qd.check_dimension_identity());
        long s = 0;
        for (const auto &a : qd.labels()) {
            s += long(a.class_size * a.dim) * (a.class_size * a.dim);
        }
        EXPECT_EQ(s, long(qd.group().order()) * qd.group().order());
    }
}
