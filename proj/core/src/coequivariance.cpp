#include "epoche/coequivariance.hpp"

#include <random>
#include <sstream>

namespace epoche {

void FreeElement::add_term(const FreeWord& w, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

FreeElement FreeElement::scaled(const RationalFunction& c) const {
    FreeElement r(ctx_);
    for (const auto& [w, x] : terms_) r.add_term(w, x * c);
    return r;
}

FreeElement FreeElement::operator*(const FreeElement& o) const {
    FreeElement r(ctx_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) {
            FreeWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, ca * cb);
        }
    return r;
}

bool FreeElement::operator==(const FreeElement& o) const {
    FreeElement d = *this;
    d -= o;
    return d.is_zero();
}

std::string FreeElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (const auto& [g, h] : w) out += " A[" + g.to_string() + ";" + h.to_string() + "]";
    }
    return out;
}

FreeElement free_generator(const ContextPtr& ctx, const LabelledTree& row, const LabelledTree& col) {
    FreeElement e(ctx);
    e.add_term({{row, col}}, RationalFunction(1));
    return e;
}

namespace {

FreeElement word2(const ContextPtr& ctx, const LabelledTree& a, const LabelledTree& b, const LabelledTree& c,
                  const LabelledTree& d, const RationalFunction& coeff) {
    FreeElement e(ctx);
    e.add_term({{a, b}, {c, d}}, coeff);
    return e;
}

}  // namespace

std::pair<FreeElement, FreeElement> relations(const ContextPtr& ctx, const LabelledTree& g1, const LabelledTree& g2,
                                              const LabelledTree& h1, const LabelledTree& h2) {
    const RationalFunction qg = ctx->lift(q_pair(g1, g2));
    const RationalFunction qh = ctx->lift(q_pair(h1, h2));
    const RationalFunction one(1);
    FreeElement first = word2(ctx, g2, h1, g1, h2, one);
    first += word2(ctx, g2, h2, g1, h1, qh);
    first -= word2(ctx, g1, h1, g2, h2, qg);
    first -= word2(ctx, g1, h2, g2, h1, qg * qh);
    FreeElement second = word2(ctx, g1, h2, g2, h1, one);
    second += word2(ctx, g2, h2, g1, h1, qg);
    second -= word2(ctx, g1, h1, g2, h2, qh);
    second -= word2(ctx, g2, h1, g1, h2, qh * qg);
    return {first, second};
}

FreeElement L_n(const ContextPtr& ctx, const std::vector<LabelledTree>& G, const std::vector<LabelledTree>& H) {
    FreeElement e(ctx);
    const int n = static_cast<int>(G.size());
    for (const auto& k : all_permutations(n)) {
        FreeWord w;
        for (int i = 0; i < n; ++i) w.emplace_back(G[static_cast<std::size_t>(i)], H[static_cast<std::size_t>(k(i))]);
        e.add_term(w, ctx->lift(q_perm(H, k)));
    }
    return e;
}

FreeElement R_n(const ContextPtr& ctx, const std::vector<LabelledTree>& G, const std::vector<LabelledTree>& H) {
    FreeElement e(ctx);
    const int n = static_cast<int>(G.size());
    for (const auto& k : all_permutations(n)) {
        FreeWord w;
        for (int i = 0; i < n; ++i) w.emplace_back(G[static_cast<std::size_t>(k(i))], H[static_cast<std::size_t>(i)]);
        e.add_term(w, ctx->lift(q_perm(G, k)));
    }
    return e;
}

namespace {

std::string tuple_string(const std::vector<LabelledTree>& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + g[i].to_string();
    return s + ")";
}

// Is d a q-monomial multiple of rel?
bool monomial_multiple(const FreeElement& d, const FreeElement& rel) {
    if (d.is_zero()) return true;
    if (rel.is_zero()) return false;
    const auto& [w, c] = *rel.terms().begin();
    auto it = d.terms().find(w);
    if (it == d.terms().end()) return false;
    RationalFunction ratio = it->second / c;
    if (!(ratio.is_polynomial() && ratio.numerator().is_monomial())) return false;
    return d == rel.scaled(ratio);
}

// Incremental row echelon form over Q on sparse vectors.
class Span {
public:
    using Vec = std::map<int, mpq_class>;

    // Reduces v against the pivots; returns the remainder. A pivot row only has
    // entries at or right of its leading column, so one left-to-right sweep suffices.
    Vec reduce(Vec v) const {
        int cursor = -1;
        while (true) {
            auto it = v.upper_bound(cursor);
            while (it != v.end() && !pivots_.count(it->first)) ++it;
            if (it == v.end()) return v;
            cursor = it->first;
            eliminate(v, it->second, pivots_.at(cursor));
        }
    }

    void add(Vec v) {
        v = reduce(std::move(v));
        if (v.empty()) return;
        const int col = v.begin()->first;
        const mpq_class lead = v.begin()->second;
        for (auto& [c, x] : v) x /= lead;
        pivots_.emplace(col, std::move(v));
    }

private:
    std::map<int, Vec> pivots_;  // leading column -> row with leading entry 1

    static void eliminate(Vec& v, mpq_class factor, const Vec& row) {
        for (const auto& [c, x] : row) {
            auto [it, inserted] = v.emplace(c, 0);
            it->second -= factor * x;
            if (it->second == 0) v.erase(it);
        }
    }
};

Span::Vec to_vec(const FreeElement& e, std::map<FreeWord, int>& index) {
    Span::Vec v;
    for (const auto& [w, c] : e.terms()) {
        auto [it, inserted] = index.emplace(w, static_cast<int>(index.size()));
        v[it->second] = c.constant_value();
    }
    return v;
}

}  // namespace

bool in_ideal_degree3(const ContextPtr& ctx, const FreeElement& target, const std::vector<LabelledTree>& G,
                      const std::vector<LabelledTree>& H) {
    std::map<FreeWord, int> index;
    Span span;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            std::vector<LabelledTree> rows, cols;
            for (int k = 0; k < 3; ++k) {
                if (k != x) rows.push_back(G[static_cast<std::size_t>(k)]);
                if (k != y) cols.push_back(H[static_cast<std::size_t>(k)]);
            }
            auto extra = free_generator(ctx, G[static_cast<std::size_t>(x)], H[static_cast<std::size_t>(y)]);
            for (int rs = 0; rs < 2; ++rs)
                for (int cs = 0; cs < 2; ++cs) {
                    const auto& g1 = rows[static_cast<std::size_t>(rs)];
                    const auto& g2 = rows[static_cast<std::size_t>(1 - rs)];
                    const auto& h1 = cols[static_cast<std::size_t>(cs)];
                    const auto& h2 = cols[static_cast<std::size_t>(1 - cs)];
                    auto [r1, r2] = relations(ctx, g1, g2, h1, h2);
                    for (const auto* r : {&r1, &r2}) {
                        span.add(to_vec(extra * *r, index));
                        span.add(to_vec(*r * extra, index));
                    }
                }
        }
    return span.reduce(to_vec(target, index)).empty();
}

namespace {

Specialization random_positive(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> part(1, 97);
    Specialization s;
    for (int j = 2; j <= 2 * d; ++j)
        for (int i = 1; i < j; ++i) {
            mpq_class x(part(rng), part(rng));
            x.canonicalize();
            s.values[qvar_index(i, j)] = x;
        }
    return s;
}

}  // namespace

std::vector<PropertyResult> verify_Ln_transform(int d, int N, int n, int trials, std::uint64_t seed,
                                                int specializations) {
    if (n != 2 && n != 3) throw std::invalid_argument("verify_Ln_transform supports n = 2 or 3");
    std::mt19937_64 rng(seed);
    const auto pool = enumerate_positive(d, N);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto draw = [&] {
        std::vector<LabelledTree> g;
        for (int i = 0; i < n; ++i) g.push_back(pool[pick(rng)]);
        return g;
    };
    PropertyResult left{"L_n(G_s,H) = q(G,s) L_n(G,H) mod relations", n, "", "", true, ""};
    PropertyResult right{"R_n(G,H_s) = q(H,s) R_n(G,H) mod relations", n, "", "", true, ""};
    int checked = 0;

    if (n == 2) {
        auto ctx = Context::make(d, N);
        left.mode = right.mode = "symbolic";
        const Permutation sw({1, 0});
        for (int t = 0; t < trials; ++t) {
            auto G = draw();
            auto H = draw();
            auto [rel1, rel2] = relations(ctx, G[0], G[1], H[0], H[1]);
            FreeElement dl = L_n(ctx, sw.apply(G), H);
            dl -= L_n(ctx, G, H).scaled(ctx->lift(q_perm(G, sw)));
            FreeElement dr = R_n(ctx, G, sw.apply(H));
            dr -= R_n(ctx, G, H).scaled(ctx->lift(q_perm(H, sw)));
            ++checked;
            if (left.pass && !monomial_multiple(dl, rel1)) {
                left.pass = false;
                left.counterexample = "G=" + tuple_string(G) + " H=" + tuple_string(H) + " difference " + dl.to_string();
            }
            if (right.pass && !monomial_multiple(dr, rel2)) {
                right.pass = false;
                right.counterexample = "G=" + tuple_string(G) + " H=" + tuple_string(H) + " difference " + dr.to_string();
            }
        }
    } else {
        left.mode = right.mode = "specialized x" + std::to_string(specializations);
        std::vector<ContextPtr> ctxs;
        for (int k = 0; k < specializations; ++k) ctxs.push_back(Context::make(d, N, random_positive(rng, d)));
        const auto perms = all_permutations(n);
        for (int t = 0; t < trials; ++t) {
            auto G = draw();
            auto H = draw();
            const auto& s = perms[1 + std::uniform_int_distribution<std::size_t>(0, perms.size() - 2)(rng)];
            ++checked;
            for (const auto& ctx : ctxs) {
                FreeElement dl = L_n(ctx, s.apply(G), H);
                dl -= L_n(ctx, G, H).scaled(ctx->lift(q_perm(G, s)));
                FreeElement dr = R_n(ctx, G, s.apply(H));
                dr -= R_n(ctx, G, H).scaled(ctx->lift(q_perm(H, s)));
                if (left.pass && !in_ideal_degree3(ctx, dl, s.apply(G), H)) {
                    left.pass = false;
                    left.counterexample = "G=" + tuple_string(G) + " H=" + tuple_string(H) + " s=" + s.to_string() +
                                          " at " + ctx->describe();
                }
                if (right.pass && !in_ideal_degree3(ctx, dr, G, s.apply(H))) {
                    right.pass = false;
                    right.counterexample = "G=" + tuple_string(G) + " H=" + tuple_string(H) + " s=" + s.to_string() +
                                           " at " + ctx->describe();
                }
            }
        }
    }
    left.instance = right.instance = std::to_string(checked) + " random instances, d=" + std::to_string(d) +
                                     " N=" + std::to_string(N);
    return {left, right};
}

}  // namespace epoche
