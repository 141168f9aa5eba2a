#include "epoche/trees.hpp"

#include "epoche/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace epoche {

namespace {

// Length of the preorder size block of the subtree starting at pos.
std::size_t block_length(const std::vector<std::uint16_t>& sizes, std::size_t pos) {
    return 2 * static_cast<std::size_t>(sizes[pos]) - 1;
}

}  // namespace

Shape::Shape() : sizes_{1} {}

Shape Shape::node(const Shape& left, const Shape& right) {
    std::vector<std::uint16_t> s;
    s.reserve(left.sizes_.size() + right.sizes_.size() + 1);
    s.push_back(static_cast<std::uint16_t>(left.leaves() + right.leaves()));
    s.insert(s.end(), left.sizes_.begin(), left.sizes_.end());
    s.insert(s.end(), right.sizes_.begin(), right.sizes_.end());
    return Shape(std::move(s));
}

Shape Shape::left() const {
    if (is_leaf()) throw std::logic_error("leaf has no branches");
    auto len = block_length(sizes_, 1);
    return Shape({sizes_.begin() + 1, sizes_.begin() + 1 + static_cast<long>(len)});
}

Shape Shape::right() const {
    if (is_leaf()) throw std::logic_error("leaf has no branches");
    auto len = block_length(sizes_, 1);
    return Shape({sizes_.begin() + 1 + static_cast<long>(len), sizes_.end()});
}

std::strong_ordering operator<=>(const Shape& a, const Shape& b) {
    return std::lexicographical_compare_three_way(a.sizes_.begin(), a.sizes_.end(), b.sizes_.begin(),
                                                  b.sizes_.end());
}

std::string Shape::to_string() const {
    if (is_leaf()) return "*";
    return "[" + left().to_string() + "," + right().to_string() + "]";
}

LabelledTree::LabelledTree(int label) : key_{1, static_cast<std::uint16_t>(label)} {
    if (label < 1 || label > 0xffff) throw std::invalid_argument("leaf label out of range");
}

LabelledTree LabelledTree::node(const LabelledTree& left, const LabelledTree& right) {
    const int nl = left.leaves(), nr = right.leaves();
    const std::size_t sl = 2 * nl - 1, sr = 2 * nr - 1;
    std::vector<std::uint16_t> k;
    k.reserve(sl + sr + 1 + nl + nr);
    k.push_back(static_cast<std::uint16_t>(nl + nr));
    k.insert(k.end(), left.key_.begin(), left.key_.begin() + static_cast<long>(sl));
    k.insert(k.end(), right.key_.begin(), right.key_.begin() + static_cast<long>(sr));
    k.insert(k.end(), left.key_.begin() + static_cast<long>(sl), left.key_.end());
    k.insert(k.end(), right.key_.begin() + static_cast<long>(sr), right.key_.end());
    return LabelledTree(std::move(k));
}

LabelledTree LabelledTree::from(const Shape& shape, const std::vector<int>& word) {
    if (static_cast<int>(word.size()) != shape.leaves()) throw std::invalid_argument("word length does not match shape");
    std::vector<std::uint16_t> k(shape.code());
    for (int w : word) {
        if (w < 1 || w > 0xffff) throw std::invalid_argument("leaf label out of range");
        k.push_back(static_cast<std::uint16_t>(w));
    }
    return LabelledTree(std::move(k));
}

int LabelledTree::label() const {
    if (!is_leaf()) throw std::logic_error("not a leaf");
    return key_[1];
}

LabelledTree LabelledTree::left() const {
    if (is_leaf()) throw std::logic_error("leaf has no branches");
    const int n = leaves();
    const int nl = key_[1];
    const std::size_t sl = 2 * nl - 1;
    std::vector<std::uint16_t> k(key_.begin() + 1, key_.begin() + 1 + static_cast<long>(sl));
    auto word = key_.begin() + (2 * n - 1);
    k.insert(k.end(), word, word + nl);
    return LabelledTree(std::move(k));
}

LabelledTree LabelledTree::right() const {
    if (is_leaf()) throw std::logic_error("leaf has no branches");
    const int n = leaves();
    const int nl = key_[1];
    const std::size_t sl = 2 * nl - 1;
    auto word = key_.begin() + (2 * n - 1);
    std::vector<std::uint16_t> k(key_.begin() + 1 + static_cast<long>(sl), word);
    k.insert(k.end(), word + nl, key_.end());
    return LabelledTree(std::move(k));
}

Shape LabelledTree::shape() const {
    return Shape({key_.begin(), key_.begin() + (2 * leaves() - 1)});
}

std::vector<int> LabelledTree::word() const {
    const int n = leaves();
    return {key_.begin() + (2 * n - 1), key_.end()};
}

int LabelledTree::max_label() const {
    const int n = leaves();
    return *std::max_element(key_.begin() + (2 * n - 1), key_.end());
}

std::strong_ordering operator<=>(const LabelledTree& a, const LabelledTree& b) {
    return std::lexicographical_compare_three_way(a.key_.begin(), a.key_.end(), b.key_.begin(), b.key_.end());
}

std::string LabelledTree::to_string() const {
    if (is_leaf()) return std::to_string(label());
    return "[" + left().to_string() + "," + right().to_string() + "]";
}

int compare_shapes(const Shape& a, const Shape& b) {
    auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_ltrees(const LabelledTree& a, const LabelledTree& b) {
    auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

bool is_positive(const LabelledTree& g) {
    if (g.is_leaf()) return true;
    auto l = g.left();
    auto r = g.right();
    return is_positive(l) && is_positive(r) && l < r;
}

namespace {

LabelledTree compose_at(const Shape& t, const std::vector<int>* perm, const std::vector<LabelledTree>& args,
                        int& next) {
    if (t.is_leaf()) {
        int i = next++;
        int j = perm ? (*perm)[i] : i;
        return args.at(j);
    }
    auto l = compose_at(t.left(), perm, args, next);
    auto r = compose_at(t.right(), perm, args, next);
    return LabelledTree::node(l, r);
}

}  // namespace

LabelledTree compose(const Shape& t, const std::vector<LabelledTree>& args) {
    if (static_cast<int>(args.size()) != t.leaves()) throw std::invalid_argument("arity mismatch in compose");
    int next = 0;
    return compose_at(t, nullptr, args, next);
}

LabelledTree compose(const Shape& t, const std::vector<int>& perm, const std::vector<LabelledTree>& args) {
    if (static_cast<int>(args.size()) != t.leaves() || perm.size() != args.size())
        throw std::invalid_argument("arity mismatch in compose");
    int next = 0;
    return compose_at(t, &perm, args, next);
}

std::vector<Shape> enumerate_shapes(int n) {
    if (n < 1) return {};
    if (n == 1) return {Shape::leaf()};
    std::vector<Shape> out;
    for (int p = 1; p < n; ++p) {
        auto ls = enumerate_shapes(p);
        auto rs = enumerate_shapes(n - p);
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(Shape::node(l, r));
    }
    return out;
}

std::vector<LabelledTree> enumerate_positive(int d, int max_leaves) {
    std::vector<std::vector<LabelledTree>> by_size(static_cast<std::size_t>(std::max(max_leaves, 0)) + 1);
    if (max_leaves >= 1)
        for (int i = 1; i <= 2 * d; ++i) by_size[1].emplace_back(i);
    for (int n = 2; n <= max_leaves; ++n) {
        for (int p = 1; p < n; ++p)
            for (const auto& l : by_size[p])
                for (const auto& r : by_size[n - p])
                    if (l < r) by_size[n].push_back(LabelledTree::node(l, r));
        std::sort(by_size[n].begin(), by_size[n].end());
    }
    std::vector<LabelledTree> out;
    for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<LabelledTree> enumerate_ltrees(int d, int n) {
    std::vector<LabelledTree> out;
    const int a = 2 * d;
    for (const auto& s : enumerate_shapes(n)) {
        std::vector<int> w(n, 1);
        while (true) {
            out.push_back(LabelledTree::from(s, w));
            int i = n - 1;
            while (i >= 0 && w[i] == a) w[i--] = 1;
            if (i < 0) break;
            ++w[i];
        }
    }
    return out;
}

mpz_class catalan(int n) {
    static std::mutex mu;
    static std::vector<mpz_class> memo{1};
    std::lock_guard lock(mu);
    while (static_cast<int>(memo.size()) <= n) {
        const long k = static_cast<long>(memo.size());
        // C_k = C_{k-1} * 2(2k-1) / (k+1)
        mpz_class next = memo.back() * (2 * (2 * k - 1));
        next /= (k + 1);
        memo.push_back(next);
    }
    return memo[static_cast<std::size_t>(n)];
}

mpz_class shape_rank(const Shape& t) {
    const int n = t.leaves();
    if (n == 1) return 0;
    const int p = t.left().leaves();
    mpz_class r = 0;
    for (int q = 1; q < p; ++q) r += catalan(q - 1) * catalan(n - q - 1);
    r += shape_rank(t.left()) * catalan(n - p - 1);
    r += shape_rank(t.right());
    return r;
}

Shape shape_unrank(int n, const mpz_class& rank) {
    if (n < 1 || rank < 0 || rank >= catalan(n - 1)) throw std::out_of_range("shape rank out of range");
    if (n == 1) return Shape::leaf();
    mpz_class r = rank;
    for (int p = 1; p < n; ++p) {
        mpz_class block = catalan(p - 1) * catalan(n - p - 1);
        if (r < block) {
            mpz_class cr = catalan(n - p - 1);
            mpz_class lr = r / cr;
            mpz_class rr = r % cr;
            return Shape::node(shape_unrank(p, lr), shape_unrank(n - p, rr));
        }
        r -= block;
    }
    throw std::logic_error("shape_unrank: unreachable");
}

namespace {

mpz_class power(int base, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

mpz_class rank(const LabelledTree& g, int d) {
    const int a = 2 * d;
    const int n = g.leaves();
    mpz_class nu = 1;
    for (int m = 1; m < n; ++m) nu += catalan(m - 1) * power(a, m);
    nu += shape_rank(g.shape()) * power(a, n);
    mpz_class w = 0;
    for (int x : g.word()) {
        if (x < 1 || x > a) throw std::invalid_argument("leaf label exceeds 2d");
        w = w * a + (x - 1);
    }
    return nu + w;
}

LabelledTree unrank(const mpz_class& nu, int d) {
    if (nu < 1) throw std::out_of_range("rank must be positive");
    const int a = 2 * d;
    mpz_class r = nu - 1;
    int n = 1;
    while (true) {
        mpz_class block = catalan(n - 1) * power(a, n);
        if (r < block) break;
        r -= block;
        ++n;
    }
    mpz_class words = power(a, n);
    Shape s = shape_unrank(n, r / words);
    mpz_class w = r % words;
    std::vector<int> word(n);
    for (int i = n - 1; i >= 0; --i) {
        mpz_class digit = w % a;
        word[i] = static_cast<int>(digit.get_si()) + 1;
        w /= a;
    }
    return LabelledTree::from(s, word);
}

namespace {

void dot_rec(const LabelledTree& g, int& counter, std::ostringstream& out) {
    int me = counter++;
    if (g.is_leaf()) {
        out << "  n" << me << " [label=\"" << g.label() << "\"];\n";
        return;
    }
    out << "  n" << me << " [label=\"\", shape=point];\n";
    int l = counter;
    dot_rec(g.left(), counter, out);
    int r = counter;
    dot_rec(g.right(), counter, out);
    out << "  n" << me << " -> n" << l << ";\n  n" << me << " -> n" << r << ";\n";
}

struct TreeParser {
    std::string_view s;
    std::size_t pos = 0;

    LabelledTree tree() {
        if (pos >= s.size()) throw ParseError("unexpected end of tree", pos);
        if (s[pos] == '[') {
            ++pos;
            auto l = tree();
            expect(',');
            auto r = tree();
            expect(']');
            return LabelledTree::node(l, r);
        }
        return LabelledTree(label());
    }

    int label() {
        if (pos >= s.size() || s[pos] < '1' || s[pos] > '9') throw ParseError("expected leaf label", pos);
        long v = 0;
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 0xffff) throw ParseError("leaf label too large", start);
            ++pos;
        }
        return static_cast<int>(v);
    }

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c) throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
};

}  // namespace

std::string to_dot(const LabelledTree& g) {
    std::ostringstream out;
    out << "digraph tree {\n";
    int counter = 0;
    dot_rec(g, counter, out);
    out << "}\n";
    return out.str();
}

LabelledTree parse_tree(std::string_view text) {
    TreeParser p{text};
    auto t = p.tree();
    if (p.pos != text.size()) throw ParseError("trailing characters after tree", p.pos);
    return t;
}

}  // namespace epoche

std::size_t std::hash<epoche::LabelledTree>::operator()(const epoche::LabelledTree& g) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : g.key()) h = (h ^ v) * 1099511628211ull;
    return h;
}
