#include "epoche/quantize.hpp"

#include "cache.hpp"
#include "epoche/io.hpp"

#include <algorithm>
#include <stdexcept>

namespace epoche {

EnvelopeElement normal_Q(const ShadowElement& a) { return a.as<AlgebraKind::Envelope>(); }

ShadowElement dequantize_normal(const EnvelopeElement& x) { return x.as<AlgebraKind::Shadow>(); }

namespace {

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

}  // namespace

ShadowElement star_normal(const ShadowElement& a, const ShadowElement& b, RewriteStrategy strategy) {
    return dequantize_normal(envelope_mul(normal_Q(a), normal_Q(b), strategy));
}

namespace {

// Closed formula on one pair of basis words.
void closed_on_words(const ContextPtr& ctx, const Word& w1, const Word& w2, const RationalFunction& c,
                     ShadowElement& out) {
    const Word g = concat(w1, w2);
    const int n = static_cast<int>(g.size());
    if (n == 0) {
        out.add_term({}, c);
        return;
    }
    // compositions of n: bit k set means a cut after position k
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int k = 0; k < n - 1; ++k) {
            if (mask & (1u << k)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        std::vector<std::vector<Shape>> shape_sets;
        for (int m : parts) shape_sets.push_back(enumerate_shapes(m));
        const auto sigmas = shuffles(parts);
        std::vector<std::size_t> pick(parts.size(), 0);
        while (true) {
            for (const auto& sigma : sigmas) {
                Word out_word;
                bool ok = true;
                int start = 0;
                for (std::size_t j = 0; j < parts.size() && ok; ++j) {
                    std::vector<LabelledTree> args;
                    for (int k = 0; k < parts[j]; ++k) args.push_back(g[static_cast<std::size_t>(sigma(start + k))]);
                    start += parts[j];
                    auto tree = compose(shape_sets[j][pick[j]], args);
                    if (!is_positive(tree) || tree.leaves() > ctx->N()) ok = false;
                    if (ok && !out_word.empty() && out_word.back() < tree) ok = false;
                    out_word.push_back(std::move(tree));
                }
                if (!ok) continue;
                out.add_term(out_word, c * ctx->lift(q_perm(g, sigma).inverse()));
            }
            std::size_t j = 0;
            while (j < pick.size() && ++pick[j] == shape_sets[j].size()) pick[j++] = 0;
            if (j == pick.size()) break;
        }
    }
}

}  // namespace

ShadowElement star_normal_closed(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    ShadowElement r(a.context());
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) closed_on_words(a.context(), u, v, cu * cv, r);
    return r;
}

namespace {

ShadowElement monomial(const ContextPtr& ctx, const Word& w, const RationalFunction& c = RationalFunction(1)) {
    ShadowElement e(ctx);
    e.add_term(w, c);
    return e;
}

}  // namespace

ShadowElement bracket_normal(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    const auto& ctx = a.context();
    ShadowElement r(ctx);
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            auto uv = dequantize_normal(normal_order(ctx, concat(u, v)));
            auto vu = dequantize_normal(normal_order(ctx, concat(v, u)));
            auto x = uv - vu.scaled(ctx->lift(swap_coeff(v, u)));
            r += x.graded_component(degree(u) + degree(v) + 1).scaled(cu * cv);
        }
    return r;
}

namespace {

EnvelopeElement::Terms weyl_of_word(const ContextPtr& ctx, const Word& w) {
    auto& cache = ctx->cache();
    EnvelopeElement::Terms out;
    if (ContextCache::lookup(cache.mu, cache.weyl, w, out)) return out;
    const int n = static_cast<int>(w.size());
    EnvelopeElement sum(ctx);
    LaurentPolynomial z;
    for (const auto& sigma : all_permutations(n)) {
        Exponents qs = q_perm(w, sigma);
        z += LaurentPolynomial(qs.pow(2));
        sum += normal_order(ctx, sigma.apply(w), ctx->lift(qs));
    }
    out = sum.scaled(ctx->lift(RationalFunction(z).inverse())).terms();
    ContextCache::store(cache.mu, cache.weyl, w, out);
    return out;
}

}  // namespace

EnvelopeElement weyl_W(const ShadowElement& a) {
    EnvelopeElement r(a.context());
    for (const auto& [w, c] : a.terms()) {
        EnvelopeElement x(a.context(), weyl_of_word(a.context(), w));
        r += x.scaled(c);
    }
    return r;
}

namespace {

// Parts of degree <= max_degree; everything when max_degree < 0. Rewriting and
// weyl_W never lower the degree, so these parts only see inputs of degree <= max_degree.
template <AlgebraKind K>
Element<K> up_to(const Element<K>& a, int max_degree) {
    if (max_degree < 0) return a;
    Element<K> r(a.context());
    for (const auto& [w, c] : a.terms())
        if (degree(w) <= max_degree) r.add_term(w, c);
    return r;
}

EnvelopeElement weyl_W_up_to(const ShadowElement& a, int max_degree) {
    if (max_degree < 0) return weyl_W(a);
    EnvelopeElement r(a.context());
    for (const auto& [w, c] : a.terms()) {
        if (degree(w) > max_degree) continue;
        for (const auto& [v, x] : weyl_of_word(a.context(), w))
            if (degree(v) <= max_degree) r.add_term(v, x * c);
    }
    return r;
}

}  // namespace

ShadowElement weyl_W_inverse(const EnvelopeElement& x_full, int max_degree) {
    const EnvelopeElement x = up_to(x_full, max_degree);
    ShadowElement f = dequantize_normal(x);
    EnvelopeElement residual = weyl_W_up_to(f, max_degree) - x;
    int last = -1;
    while (!residual.is_zero()) {
        const int m = residual.degree_range()->first;
        if (m <= last) throw std::logic_error("weyl_W_inverse: correction did not raise the degree");
        last = m;
        if (max_degree >= 0 && m > max_degree) break;
        auto correction = dequantize_normal(residual.graded_component(m));
        f -= correction;
        residual -= weyl_W_up_to(correction, max_degree);
    }
    return f;
}

ShadowElement star_weyl(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    return weyl_W_inverse(weyl_W(a) * weyl_W(b));
}

namespace {

// Adds sign * (P_{l_r} ... P_{l_1})(y) over all chains next <= l_1 < ... < l_r < m,
// where P_l = W o pi_l o phi^-1.
void chain_sum(const EnvelopeElement& y, int next, int m, int sign, EnvelopeElement& acc) {
    if (sign > 0)
        acc += y;
    else
        acc -= y;
    for (int l = next; l < m; ++l) {
        auto component = dequantize_normal(y.graded_component(l));
        if (component.is_zero()) continue;
        chain_sum(weyl_W(component), l + 1, m, -sign, acc);
    }
}

}  // namespace

ShadowElement star_weyl_recursive(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    const auto& ctx = a.context();
    const EnvelopeElement x = weyl_W(a) * weyl_W(b);
    ShadowElement r(ctx);
    // rewriting keeps the number of leaves, so the degree stays below it
    int top = 0;
    for (const auto& [w, c] : x.terms()) {
        int leaves = 0;
        for (const auto& g : w) leaves += g.leaves();
        top = std::max(top, leaves - 1);
    }
    for (int m = 0; m <= top; ++m) {
        EnvelopeElement acc(ctx);
        chain_sum(x, 0, m, 1, acc);
        r += dequantize_normal(acc.graded_component(m));
    }
    return r;
}

ShadowElement bracket_weyl(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    const auto& ctx = a.context();
    ShadowElement r(ctx);
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            const int m = degree(u) + degree(v) + 1;
            auto x = weyl_W_up_to(monomial(ctx, u), m) * weyl_W_up_to(monomial(ctx, v), m);
            r += weyl_W_inverse(x, m).graded_component(m).scaled(cu * cv);
        }
    return r;
}

ShadowElement bracket_weyl_antisym(const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    const auto& ctx = a.context();
    ShadowElement r(ctx);
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            auto mu = monomial(ctx, u), mv = monomial(ctx, v);
            auto x = bracket_weyl(mu, mv) - bracket_weyl(mv, mu).scaled(ctx->lift(swap_coeff(v, u)));
            r += x.scaled(cu * cv);
        }
    return r;
}

DistortionWitness distortion_witness(const ContextPtr& ctx, int max_length) {
    DistortionWitness out;
    std::vector<LabelledTree> leaves, pairs;
    for (const auto& g : enumerate_positive(ctx->d(), std::min(ctx->N(), 2)))
        (g.is_leaf() ? leaves : pairs).push_back(g);
    // monomials in the leaf generators, by length then in basis order
    std::vector<Word> monos{{}};
    std::vector<Word> frontier{{}};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (const auto& g : leaves)
                if (w.empty() || !(w.back() < g)) {
                    auto u = w;
                    u.push_back(g);
                    next.push_back(u);
                }
        monos.insert(monos.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const auto& u : monos) {
        if (u.empty()) continue;
        for (const auto& g : pairs) {
            auto hg = generator<AlgebraKind::Shadow>(ctx, g);
            auto hu = monomial(ctx, u);
            auto lhs = weyl_W(hg * hu);
            auto rhs = generator<AlgebraKind::Envelope>(ctx, g) * weyl_W(hu);
            if (lhs != rhs) {
                out.found = true;
                out.generator = g;
                out.u = u;
                out.detail = "W(h[" + g.to_string() + "] " + format_word(u) + ") = " + format_element(lhs) +
                             " ; h^[" + g.to_string() + "] W(" + format_word(u) + ") = " + format_element(rhs);
                return out;
            }
        }
    }
    return out;
}

LambdaReport lambda_check(const ContextPtr& ctx) {
    LambdaReport rep;
    auto h1 = generator<AlgebraKind::Shadow>(ctx, LabelledTree(1));
    auto h2 = generator<AlgebraKind::Shadow>(ctx, LabelledTree(2));
    std::vector<std::pair<ShadowElement, ShadowElement>> probes{{h1, h2}, {h1 * h1, h2}};
    std::optional<RationalFunction> lambda;
    for (const auto& [f, g] : probes) {
        auto anti = bracket_weyl_antisym(f, g);
        auto plain = bracket_weyl(f, g);
        std::string label = format_element(f) + " , " + format_element(g) + " : ";
        if (plain.is_zero()) {
            if (!anti.is_zero()) {
                rep.exists = false;
                rep.ratios.push_back(label + "not proportional");
            } else {
                rep.ratios.push_back(label + "both zero");
            }
            continue;
        }
        const auto& [w, c] = *plain.terms().begin();
        RationalFunction ratio = anti.coefficient(w) / c;
        if (anti != plain.scaled(ratio)) {
            rep.exists = false;
            rep.ratios.push_back(label + "not proportional");
            continue;
        }
        rep.ratios.push_back(label + ratio.to_string());
        if (lambda && *lambda != ratio) rep.exists = false;
        if (!lambda) lambda = ratio;
    }
    return rep;
}

}  // namespace epoche
