#include "epoche/algebra.hpp"

#include "cache.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <tuple>

namespace epoche {

int degree(const Word& w) {
    int g = 0;
    for (const auto& t : w) g += t.leaves() - 1;
    return g;
}

bool is_basis_word(const Word& w, const Context& ctx) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!is_positive(w[i]) || w[i].leaves() > ctx.N() || w[i].max_label() > ctx.labels()) return false;
        if (i > 0 && w[i - 1] < w[i]) return false;
    }
    return true;
}

namespace {

struct Signed {
    int sign;
    Exponents q;
    LabelledTree tree;
};

std::optional<Signed> canon_rec(const LabelledTree& g) {
    if (g.is_leaf()) return Signed{1, {}, g};
    auto l = canon_rec(g.left());
    if (!l) return std::nullopt;
    auto r = canon_rec(g.right());
    if (!r) return std::nullopt;
    auto c = l->tree <=> r->tree;
    if (c == 0) return std::nullopt;
    if (c < 0) return Signed{l->sign * r->sign, l->q * r->q, LabelledTree::node(l->tree, r->tree)};
    // h[[L,R]] = -q_pair(R, L) h[[R,L]]
    return Signed{-l->sign * r->sign, l->q * r->q * q_pair(r->tree, l->tree), LabelledTree::node(r->tree, l->tree)};
}

}  // namespace

std::optional<std::pair<RationalFunction, LabelledTree>> canonicalize(const Context& ctx, const LabelledTree& g) {
    if (g.max_label() > ctx.labels()) throw std::invalid_argument("leaf label " + std::to_string(g.max_label()) +
                                                                  " exceeds 2d = " + std::to_string(ctx.labels()));
    if (g.leaves() > ctx.N()) return std::nullopt;
    auto s = canon_rec(g);
    if (!s) return std::nullopt;
    return std::make_pair(ctx.lift(s->q) * RationalFunction(s->sign), s->tree);
}

namespace {

// Canonicalizes every factor; returns false if the word vanishes.
bool canonical_word(const Context& ctx, const Word& w, Word& out, RationalFunction& coeff) {
    out.clear();
    out.reserve(w.size());
    for (const auto& g : w) {
        auto c = canonicalize(ctx, g);
        if (!c) return false;
        coeff *= c->first;
        out.push_back(std::move(c->second));
    }
    return true;
}

}  // namespace

ShadowElement shadow_word(const ContextPtr& ctx, const Word& w, const RationalFunction& c) {
    ShadowElement e(ctx);
    Word u;
    RationalFunction coeff = c;
    if (!canonical_word(*ctx, w, u, coeff)) return e;
    Exponents q;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] < u[j]) q = q * q_pair(u[j], u[i]);
    std::stable_sort(u.begin(), u.end(), std::greater<>());
    e.add_term(u, coeff * ctx->lift(q));
    return e;
}

ShadowElement shadow_mul(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    ShadowElement r(a.context());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r += shadow_word(a.context(), w, ca * cb);
        }
    return r;
}

Exponents swap_coeff(const Word& a, const Word& b) {
    Exponents q;
    for (const auto& x : a)
        for (const auto& y : b) q = q * q_pair(x, y);
    return q;
}

std::uint64_t rewrite_step_bound(int length) {
    // S(L) = C(L,2) * (1 + S(L-1)): at most C(L,2) swaps at length L, each
    // spawning one word of length L-1.
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t s = 0;
    for (std::uint64_t L = 2; L <= static_cast<std::uint64_t>(std::max(length, 0)); ++L) {
        std::uint64_t pairs = L * (L - 1) / 2;
        if (s >= cap / pairs - 1) return cap;
        s = pairs * (1 + s);
    }
    return s;
}

namespace {

int ascents(const Word& w) {
    int a = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] < w[j]) ++a;
    return a;
}

using Key = std::tuple<int, int, Word>;  // (length, ascents, word)

RewriteStats& scratch_stats() {
    thread_local RewriteStats s;
    return s;
}

}  // namespace

EnvelopeElement normal_order(const ContextPtr& ctx, const Word& w, const RationalFunction& c, RewriteStrategy strategy,
                             RewriteStats* stats) {
    EnvelopeElement result(ctx);
    Word start;
    RationalFunction coeff = c;
    if (coeff.is_zero() || !canonical_word(*ctx, w, start, coeff)) return result;

    const bool memo = strategy.kind == RewriteStrategy::Kind::Leftmost && stats == nullptr;
    if (memo) {
        auto& cache = ctx->cache();
        EnvelopeElement::Terms unit;
        if (!ContextCache::lookup(cache.mu, cache.normal_forms, start, unit)) {
            unit = normal_order(ctx, start, RationalFunction(1), strategy, &scratch_stats()).terms();
            ContextCache::store(cache.mu, cache.normal_forms, start, unit);
        }
        for (const auto& [u, x] : unit) result.add_term(u, x * coeff);
        return result;
    }

    std::mt19937_64 rng(strategy.seed);
    std::map<Key, RationalFunction, std::greater<>> pending;
    pending.emplace(Key{static_cast<int>(start.size()), ascents(start), start}, coeff);
    const std::uint64_t bound = rewrite_step_bound(static_cast<int>(start.size()));
    std::uint64_t steps = 0;

    auto push = [&](Word&& u, const RationalFunction& x, const Key& parent) {
        if (x.is_zero()) return;
        Key k{static_cast<int>(u.size()), ascents(u), std::move(u)};
        if (!(std::tie(std::get<0>(k), std::get<1>(k)) < std::tie(std::get<0>(parent), std::get<1>(parent))))
            throw std::logic_error("normal_order: rewrite did not decrease (length, ascents)");
        auto [it, inserted] = pending.emplace(std::move(k), x);
        if (!inserted) {
            it->second += x;
            if (it->second.is_zero()) pending.erase(it);
        }
    };

    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const Key& key = node.key();
        const Word& u = std::get<2>(key);
        const RationalFunction& x = node.mapped();
        if (std::get<1>(key) == 0) {
            result.add_term(u, x);
            continue;
        }
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i + 1 < u.size(); ++i)
            if (u[i] < u[i + 1]) spots.push_back(i);
        std::size_t i = 0;
        switch (strategy.kind) {
            case RewriteStrategy::Kind::Leftmost: i = spots.front(); break;
            case RewriteStrategy::Kind::Rightmost: i = spots.back(); break;
            case RewriteStrategy::Kind::Random:
                i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
                break;
        }
        if (++steps > bound) throw std::logic_error("normal_order: step bound exceeded");
        const LabelledTree& a = u[i];
        const LabelledTree& b = u[i + 1];
        // swapped term
        Word swapped = u;
        std::swap(swapped[i], swapped[i + 1]);
        push(std::move(swapped), x * ctx->lift(q_pair(b, a)), key);
        // bracket term; [a,b] is positive since a < b
        if (a.leaves() + b.leaves() <= ctx->N()) {
            Word joined(u.begin(), u.begin() + static_cast<long>(i));
            joined.push_back(LabelledTree::node(a, b));
            joined.insert(joined.end(), u.begin() + static_cast<long>(i) + 2, u.end());
            push(std::move(joined), x, key);
        }
    }
    if (stats) {
        stats->steps += steps;
        stats->bound = std::max(stats->bound, bound);
    }
    return result;
}

EnvelopeElement normal_order(const EnvelopeElement& x, RewriteStrategy strategy) {
    EnvelopeElement r(x.context());
    for (const auto& [w, c] : x.terms()) r += normal_order(x.context(), w, c, strategy);
    return r;
}

EnvelopeElement envelope_mul(const EnvelopeElement& a, const EnvelopeElement& b, RewriteStrategy strategy) {
    a.check(b);
    EnvelopeElement r(a.context());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r += normal_order(a.context(), w, ca * cb, strategy);
        }
    return r;
}

}  // namespace epoche
