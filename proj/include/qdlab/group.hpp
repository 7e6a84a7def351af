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

#ifndef QDLAB_GROUP_HPP
#define QDLAB_GROUP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qdlab {

/// Conjugacy class bookkeeping. All indices are 0-based element indices of
/// the parent group; label i runs over 0..|C|-1.
struct ConjugacyClass {
    int id = 0;
    std::vector<int> elements;     // c_i, ascending
    int rep = 0;                   // r_C = c_0
    std::vector<int> q;            // Q_C, q[i] r_C q[i]^-1 = elements[i]
    std::vector<int> centralizer;  // N_C, ascending (identity first)
    std::vector<int> label;        // |G| entries; i(g) or -1
    std::vector<int> local;        // |G| entries; position in N_C or -1
    std::vector<std::vector<int>> local_mult;

    int size() const {
        return (int)elements.size();
    }
    int centralizer_order() const {
        return (int)centralizer.size();
    }
    bool contains(int g) const {
        return label[g] >= 0;
    }
};

class FiniteGroup {
   public:
    FiniteGroup() = default;

    /// Validates the table and relocates the identity to index 0.
    static FiniteGroup from_table(
        std::vector<std::vector<int>> mult, std::vector<std::string> names = {}, std::string label = "");

    int order() const {
        return n_;
    }
    int mul(int a, int b) const {
        return mult_[a * n_ + b];
    }
    int inv(int a) const {
        return inv_[a];
    }
    int conj(int g, int x) const {
        return mul(mul(g, x), inv(g));
    }
    const std::string &name(int g) const {
        return names_[g];
    }
    const std::string &label() const {
        return label_;
    }
    const std::vector<ConjugacyClass> &classes() const {
        return classes_;
    }
    int class_of(int g) const {
        return class_of_[g];
    }
    bool is_abelian() const;

    /// g = q_i n with q_i in Q_C and n in N_C. Returns (i, n).
    std::pair<int, int> decompose_qn(int class_id, int g) const;

    std::vector<std::vector<int>> table() const;
    std::uint64_t content_hash() const;

   private:
    void derive_classes();

    int n_ = 0;
    std::vector<int> mult_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
    std::string label_;
    std::vector<ConjugacyClass> classes_;
    std::vector<int> class_of_;
};

/// Z1..Z12, S3, D4, Q8.
FiniteGroup catalog_group(const std::string &name);
std::vector<std::string> catalog_names();

/// Text format:
///   order N
///   N rows of N indices
///   names            (optional)
///   N whitespace-free tokens
FiniteGroup parse_group(std::istream &in, const std::string &label = "file");
FiniteGroup load_group_file(const std::string &path);

std::uint64_t fnv1a(const void *data, std::size_t len, std::uint64_t h = 1469598103934665603ull);

}  // namespace qdlab

#endif
