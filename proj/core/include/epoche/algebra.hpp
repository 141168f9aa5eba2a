#pragma once

#include "epoche/coeffs.hpp"
#include "epoche/context.hpp"
#include "epoche/errors.hpp"
#include "epoche/trees.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace epoche {

// A word of generators h[G_1] ... h[G_n]. Basis monomials are non-increasing words
// of positive trees.
using Word = std::vector<LabelledTree>;

int degree(const Word& w);  // sum of (leaves - 1)
bool is_basis_word(const Word& w, const Context& ctx);

enum class AlgebraKind { Shadow, Envelope };

// Linear combination of basis monomials. Shadow and envelope elements share the
// underlying vector space and differ only in multiplication.
template <AlgebraKind K>
class Element {
public:
    using Terms = std::map<Word, RationalFunction>;

    explicit Element(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    Element(ContextPtr ctx, Terms terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) { prune(); }

    static Element unit(ContextPtr ctx) {
        Element e(std::move(ctx));
        e.terms_[{}] = RationalFunction(1);
        return e;
    }

    const ContextPtr& context() const { return ctx_; }
    const Context& ctx() const { return *ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    RationalFunction coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? RationalFunction() : it->second;
    }

    // Adds c * w for a basis word w.
    void add_term(const Word& w, const RationalFunction& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        check(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        check(o);
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const { return scaled(RationalFunction(-1)); }

    Element scaled(const RationalFunction& c) const {
        Element r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [w, x] : terms_) r.add_term(w, x * c);
        return r;
    }
    friend Element operator*(const RationalFunction& c, const Element& a) { return a.scaled(c); }

    bool operator==(const Element& o) const {
        check(o);
        return (*this - o).is_zero();
    }
    bool operator!=(const Element& o) const { return !(*this == o); }

    // Smallest and largest degree of a monomial with nonzero coefficient.
    std::optional<std::pair<int, int>> degree_range() const {
        if (terms_.empty()) return std::nullopt;
        int lo = 1 << 30, hi = -1;
        for (const auto& [w, c] : terms_) {
            int g = degree(w);
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        return std::make_pair(lo, hi);
    }

    Element graded_component(int m) const {
        Element r(ctx_);
        for (const auto& [w, c] : terms_)
            if (degree(w) == m) r.terms_.emplace(w, c);
        return r;
    }
    // Part of degree >= m.
    Element filtration_part(int m) const {
        Element r(ctx_);
        for (const auto& [w, c] : terms_)
            if (degree(w) >= m) r.terms_.emplace(w, c);
        return r;
    }

    template <AlgebraKind J>
    Element<J> as() const {
        return Element<J>(ctx_, terms_);
    }

    void check(const Element& o) const {
        if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_)) throw ContextMismatch("elements live in different contexts");
    }

private:
    ContextPtr ctx_;
    Terms terms_;

    void prune() {
        std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
    }
};

using ShadowElement = Element<AlgebraKind::Shadow>;
using EnvelopeElement = Element<AlgebraKind::Envelope>;

// Rewrites h[g] as c * h[g+] with g+ positive, or returns nullopt when h[g]
// vanishes (repeated branch, or more than N leaves).
std::optional<std::pair<RationalFunction, LabelledTree>> canonicalize(const Context& ctx, const LabelledTree& g);

// Canonical generator element h[g].
template <AlgebraKind K>
Element<K> generator(const ContextPtr& ctx, const LabelledTree& g) {
    Element<K> e(ctx);
    if (auto c = canonicalize(*ctx, g)) e.add_term({c->second}, c->first);
    return e;
}

// Shadow algebra: h[a] h[b] = q_pair(b, a) h[b] h[a].
ShadowElement shadow_word(const ContextPtr& ctx, const Word& w, const RationalFunction& c = RationalFunction(1));
ShadowElement shadow_mul(const ShadowElement& a, const ShadowElement& b);

// The c with b a = c a b in the shadow algebra, for monomials a and b.
Exponents swap_coeff(const Word& a, const Word& b);

struct RewriteStrategy {
    enum class Kind { Leftmost, Rightmost, Random };
    Kind kind = Kind::Leftmost;
    std::uint64_t seed = 0;

    static RewriteStrategy leftmost() { return {}; }
    static RewriteStrategy rightmost() { return {Kind::Rightmost, 0}; }
    static RewriteStrategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct RewriteStats {
    std::uint64_t steps = 0;
    std::uint64_t bound = 0;  // a priori bound on steps for the input length
};

// Number of rewrite steps sufficient for any word of the given length.
std::uint64_t rewrite_step_bound(int length);

// Rewrites c * (word) into non-increasing monomials using
// h[a] h[b] = q_pair(b, a) h[b] h[a] + h[[a,b]] for a < b.
EnvelopeElement normal_order(const ContextPtr& ctx, const Word& w, const RationalFunction& c = RationalFunction(1),
                             RewriteStrategy strategy = {}, RewriteStats* stats = nullptr);
EnvelopeElement normal_order(const EnvelopeElement& x, RewriteStrategy strategy);

EnvelopeElement envelope_mul(const EnvelopeElement& a, const EnvelopeElement& b,
                             RewriteStrategy strategy = {});

// Algebra products dispatched on the element kind.
inline ShadowElement operator*(const ShadowElement& a, const ShadowElement& b) { return shadow_mul(a, b); }
inline EnvelopeElement operator*(const EnvelopeElement& a, const EnvelopeElement& b) { return envelope_mul(a, b); }

}  // namespace epoche
