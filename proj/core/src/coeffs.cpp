#include "epoche/coeffs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace epoche {

Permutation::Permutation(std::vector<int> images) : p_(std::move(images)) {
    std::vector<bool> seen(p_.size(), false);
    for (int x : p_) {
        if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return Permutation(std::move(p));
}

Permutation Permutation::transposition(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.p_[static_cast<std::size_t>(i)], p.p_[static_cast<std::size_t>(j)]);
    return p;
}

Permutation Permutation::operator*(const Permutation& o) const {
    if (size() != o.size()) throw std::invalid_argument("permutation size mismatch");
    Permutation r;
    r.p_.resize(p_.size());
    for (int i = 0; i < size(); ++i) r.p_[static_cast<std::size_t>(i)] = (*this)(o(i));
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.p_.resize(p_.size());
    for (int i = 0; i < size(); ++i) r.p_[static_cast<std::size_t>(p_[static_cast<std::size_t>(i)])] = i;
    return r;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (p_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

std::string Permutation::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p_[i] + 1);
    }
    return s + ")";
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<Permutation> out;
    auto p = Permutation::identity(n).images();
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Exponents q_pair(const LabelledTree& a, const LabelledTree& b) {
    std::vector<int> wa = a.word(), wb = b.word();
    std::map<int, int> acc;
    for (int i : wa)
        for (int j : wb) {
            if (i == j) continue;
            if (i < j)
                acc[qvar_index(i, j)] += 1;
            else
                acc[qvar_index(j, i)] -= 1;
        }
    Exponents m;
    for (const auto& [v, e] : acc)
        if (e != 0) {
            auto [i, j] = qvar_pair(v);
            m = m * Exponents::var(i, j, e);
        }
    return m;
}

Exponents q_perm(const std::vector<LabelledTree>& trees, const Permutation& sigma) {
    const int n = static_cast<int>(trees.size());
    if (sigma.size() != n) throw std::invalid_argument("permutation size mismatch");
    auto pos = sigma.inverse();  // pos(i): where G_i sits in the permuted word
    Exponents q;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pos(i) > pos(j)) q = q * q_pair(trees[static_cast<std::size_t>(i)], trees[static_cast<std::size_t>(j)]);
    return q;
}

LaurentPolynomial partition_Z(const std::vector<LabelledTree>& trees) {
    LaurentPolynomial z;
    for (const auto& s : all_permutations(static_cast<int>(trees.size()))) z += LaurentPolynomial(q_perm(trees, s).pow(2));
    return z;
}

RationalFunction weyl_coeff(const std::vector<LabelledTree>& trees, const Permutation& sigma) {
    return RationalFunction::quotient(LaurentPolynomial(q_perm(trees, sigma)), partition_Z(trees));
}

std::vector<Permutation> shuffles(const std::vector<int>& parts) {
    int n = 0;
    for (int m : parts) {
        if (m < 0) throw std::invalid_argument("negative block size");
        n += m;
    }
    std::vector<Permutation> out;
    // assign to each position the block it draws from; values within a block increase
    std::vector<int> labels;
    for (std::size_t b = 0; b < parts.size(); ++b)
        for (int k = 0; k < parts[b]; ++k) labels.push_back(static_cast<int>(b));
    // iterate over multiset permutations of block labels on the value axis
    do {
        // labels[v] = block receiving value v, in increasing order
        std::vector<int> next(parts.size(), 0), start(parts.size(), 0);
        for (std::size_t b = 1; b < parts.size(); ++b) start[b] = start[b - 1] + parts[b - 1];
        std::vector<int> img(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            auto b = static_cast<std::size_t>(labels[static_cast<std::size_t>(v)]);
            img[static_cast<std::size_t>(start[b] + next[b]++)] = v;
        }
        out.emplace_back(std::move(img));
    } while (std::next_permutation(labels.begin(), labels.end()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace epoche
