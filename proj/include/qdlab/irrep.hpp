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

#ifndef QDLAB_IRREP_HPP
#define QDLAB_IRREP_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdlab/group.hpp"

namespace qdlab {

using cplx = std::complex<double>;

/// Unitary irrep of a centralizer; mats[m] is indexed by the centralizer's
/// local element position.
struct Irrep {
    std::string name;
    int dim = 1;
    std::vector<Eigen::MatrixXcd> mats;

    cplx at(int j, int jp, int m) const {
        return mats[m](j, jp);
    }
    cplx chi(int m) const {
        return mats[m].trace();
    }
};

/// Abelian characters by search, plus the shipped 2-dim realizations of the
/// non-abelian catalog groups.
std::vector<Irrep> catalog_irreps(const FiniteGroup &G, const ConjugacyClass &C);

/// All 1-dim representations of a group given by its multiplication table.
std::vector<Irrep> one_dim_irreps(const std::vector<std::vector<int>> &mult);

/// Matrix counts and shapes only.
void check_irrep_shapes(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps);
/// Throws InputError naming the first violated invariant.
void validate_irreps(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps);

struct SchurReport {
    double schur_dev = 0;   // matrix-element orthogonality
    double schur2_dev = 0;  // character column orthogonality
    int dim_sum = 0;
    int order = 0;
    int worst[6] = {-1, -1, -1, -1, -1, -1};  // (R1, R2, j, k, l, m)
    int worst2[2] = {-1, -1};                 // (h1, h2)
    bool pass(double tol = 1e-10) const {
        return schur_dev <= tol && schur2_dev <= tol && dim_sum == order;
    }
    std::string describe() const;
};

SchurReport schur_verify(const std::vector<std::vector<int>> &mult, const std::vector<Irrep> &irreps);

struct AnyonLabel {
    int cls = 0;
    int irrep = 0;
    int class_size = 1;
    int dim = 1;
    std::string name;
};

/// G together with an irrep list for every centralizer.
class QuantumDouble {
   public:
    explicit QuantumDouble(FiniteGroup g);

    const FiniteGroup &group() const {
        return G_;
    }
    const std::vector<Irrep> &irreps(int cls) const {
        return irreps_.at(cls);
    }
    const Irrep &irrep(int cls, int r) const {
        return irreps_.at(cls).at(r);
    }
    const ConjugacyClass &cls(int c) const {
        return G_.classes().at(c);
    }
    /// Without validation only shapes are checked; schur_verify then reports the damage.
    void set_irreps(int cls, std::vector<Irrep> irreps, bool validate = true);

    std::vector<AnyonLabel> labels() const;
    /// Throws IdentityViolation if sum over labels of (|C| dim R)^2 != |G|^2.
    void check_dimension_identity() const;
    std::uint64_t content_hash() const;

   private:
    FiniteGroup G_;
    std::vector<std::vector<Irrep>> irreps_;
    std::vector<bool> loaded_;
};

/// Irrep file: optional "class <k>" lines select the centralizer for the
/// following "irrep <name> dim <d>" blocks (default class 0); each block lists
/// |N_C| matrices of d*d entries written a+bi, in centralizer order.
void load_irreps(std::istream &in, QuantumDouble &qd, bool validate = true);
void load_irreps_file(const std::string &path, QuantumDouble &qd, bool validate = true);

cplx parse_complex(const std::string &tok);

}  // namespace qdlab

#endif
