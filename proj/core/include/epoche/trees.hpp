#pragma once

#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <string>
#include <string_view>
#include <vector>

namespace epoche {

// Planar binary tree shape. Stored as the preorder sequence of subtree leaf
// counts; lexicographic comparison of that sequence is exactly the tree order.
class Shape {
public:
    Shape();  // single leaf
    static Shape leaf() { return Shape(); }
    static Shape node(const Shape& left, const Shape& right);

    int leaves() const { return sizes_[0]; }
    bool is_leaf() const { return sizes_[0] == 1; }
    Shape left() const;
    Shape right() const;

    const std::vector<std::uint16_t>& code() const { return sizes_; }

    friend bool operator==(const Shape& a, const Shape& b) { return a.sizes_ == b.sizes_; }
    friend std::strong_ordering operator<=>(const Shape& a, const Shape& b);

    std::string to_string() const;  // leaves printed as '*'

private:
    friend class LabelledTree;
    explicit Shape(std::vector<std::uint16_t> sizes) : sizes_(std::move(sizes)) {}
    std::vector<std::uint16_t> sizes_;
};

// Binary tree with leaves labelled by 1..2d. The key is the shape code followed
// by the leaf word, so vector comparison gives shape-first, then word order.
class LabelledTree {
public:
    LabelledTree() : LabelledTree(1) {}
    explicit LabelledTree(int label);
    static LabelledTree node(const LabelledTree& left, const LabelledTree& right);
    static LabelledTree from(const Shape& shape, const std::vector<int>& word);

    int leaves() const { return key_[0]; }
    bool is_leaf() const { return key_[0] == 1; }
    int label() const;  // only for leaves
    LabelledTree left() const;
    LabelledTree right() const;

    Shape shape() const;
    std::vector<int> word() const;
    int max_label() const;

    const std::vector<std::uint16_t>& key() const { return key_; }

    friend bool operator==(const LabelledTree& a, const LabelledTree& b) { return a.key_ == b.key_; }
    friend std::strong_ordering operator<=>(const LabelledTree& a, const LabelledTree& b);

    std::string to_string() const;

private:
    explicit LabelledTree(std::vector<std::uint16_t> key) : key_(std::move(key)) {}
    std::vector<std::uint16_t> key_;
};

int compare_shapes(const Shape& a, const Shape& b);
int compare_ltrees(const LabelledTree& a, const LabelledTree& b);

bool is_positive(const LabelledTree& g);

// Tree operad composition: leaf i of t becomes args[i].
LabelledTree compose(const Shape& t, const std::vector<LabelledTree>& args);
// Same, with leaf i of t taking args[perm[i]].
LabelledTree compose(const Shape& t, const std::vector<int>& perm, const std::vector<LabelledTree>& args);

// All shapes with exactly n leaves, increasing.
std::vector<Shape> enumerate_shapes(int n);
// All positive trees with at most max_leaves leaves and labels in 1..2d, increasing.
std::vector<LabelledTree> enumerate_positive(int d, int max_leaves);
// All labelled trees with exactly n leaves, increasing.
std::vector<LabelledTree> enumerate_ltrees(int d, int n);

mpz_class catalan(int n);

mpz_class shape_rank(const Shape& t);  // 0-based among shapes with the same leaf count
Shape shape_unrank(int leaves, const mpz_class& r);

// 1-based position of g in the total order on all labelled trees over 2d labels.
mpz_class rank(const LabelledTree& g, int d);
LabelledTree unrank(const mpz_class& nu, int d);

std::string to_dot(const LabelledTree& g);

// tree := label | '[' tree ',' tree ']'. Throws ParseError.
LabelledTree parse_tree(std::string_view text);

}  // namespace epoche

template <>
struct std::hash<epoche::LabelledTree> {
    std::size_t operator()(const epoche::LabelledTree& g) const noexcept;
};
