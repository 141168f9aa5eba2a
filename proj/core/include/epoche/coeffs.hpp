#pragma once

#include "epoche/laurent.hpp"
#include "epoche/rational_function.hpp"
#include "epoche/trees.hpp"

#include <string>
#include <vector>

namespace epoche {

// One-line notation, 0-based: sigma[i] is the image of i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);

    int size() const { return static_cast<int>(p_.size()); }
    int operator()(int i) const { return p_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return p_; }

    Permutation operator*(const Permutation& o) const;  // (this * o)(i) = this(o(i))
    Permutation inverse() const;
    bool is_identity() const;

    // (x_{sigma(0)}, ..., x_{sigma(n-1)})
    template <class T>
    std::vector<T> apply(const std::vector<T>& xs) const {
        std::vector<T> out;
        out.reserve(xs.size());
        for (int i : p_) out.push_back(xs.at(static_cast<std::size_t>(i)));
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    std::string to_string() const;  // 1-based, e.g. "(2,1,3)"

private:
    std::vector<int> p_;
};

std::vector<Permutation> all_permutations(int n);  // lexicographic

// Product of q[i,j] over leaf label pairs i of a, j of b.
Exponents q_pair(const LabelledTree& a, const LabelledTree& b);

// The q with h[G_s(1)]...h[G_s(n)] = q * h[G_1]...h[G_n] in the shadow algebra.
Exponents q_perm(const std::vector<LabelledTree>& trees, const Permutation& sigma);

// Sum over sigma of q_perm^2.
LaurentPolynomial partition_Z(const std::vector<LabelledTree>& trees);

// q_perm / partition_Z
RationalFunction weyl_coeff(const std::vector<LabelledTree>& trees, const Permutation& sigma);

// Permutations increasing on each consecutive block of the given sizes.
std::vector<Permutation> shuffles(const std::vector<int>& parts);

}  // namespace epoche
