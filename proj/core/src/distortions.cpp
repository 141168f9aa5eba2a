#include "epoche/distortions.hpp"

#include "epoche/io.hpp"

#include <stdexcept>

namespace epoche {

namespace {

ShadowElement monomial(const ContextPtr& ctx, const Word& w, const RationalFunction& c = RationalFunction(1)) {
    ShadowElement e(ctx);
    e.add_term(w, c);
    return e;
}

// Writes a word as c * (basis word); nullopt if it vanishes.
std::optional<std::pair<RationalFunction, Word>> as_basis_word(const ContextPtr& ctx, const Word& w) {
    auto e = shadow_word(ctx, w);
    if (e.is_zero()) return std::nullopt;
    const auto& [word, c] = *e.terms().begin();
    return std::make_pair(c, word);
}

Word json_word(const nlohmann::json& j) {
    Word w;
    if (j.is_string()) {
        w.push_back(parse_tree(j.get_ref<const std::string&>()));
        return w;
    }
    if (!j.is_array()) throw ParseError("word must be a tree string or a list of them", 0);
    for (const auto& t : j) {
        if (!t.is_string()) throw ParseError("tree must be a string", 0);
        w.push_back(parse_tree(t.get_ref<const std::string&>()));
    }
    return w;
}

}  // namespace

ProjectorSpec ProjectorSpec::builtin_n2(const ContextPtr& ctx) {
    if (ctx->N() != 2) throw ConfigError("the built-in projector needs N = 2, got N = " + std::to_string(ctx->N()));
    return ProjectorSpec(Kind::BuiltinN2);
}

ProjectorSpec ProjectorSpec::table(std::map<Word, ShadowElement> images) {
    ProjectorSpec p(Kind::Table);
    p.table_ = std::move(images);
    return p;
}

ProjectorSpec ProjectorSpec::from_json(const ContextPtr& ctx, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("projector table must be an array", 0);
    std::map<Word, ShadowElement> images;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("key") || !entry.contains("value"))
            throw ParseError("projector entry needs key and value", 0);
        auto basis = as_basis_word(ctx, json_word(entry["key"]));
        if (!basis) continue;
        auto value = shadow_from_json(ctx, entry["value"]);
        images.insert_or_assign(basis->second, value.scaled(basis->first.inverse()));
    }
    return table(std::move(images));
}

RationalFunction braiding_factor(const Context& ctx, const std::vector<int>& i, const std::vector<int>& j,
                                 const Permutation& sigma) {
    const int m = sigma.size();
    // token 2k carries i_k, token 2k+1 carries j_k; the reference order is by token
    std::vector<int> seq, label(static_cast<std::size_t>(2 * m));
    for (int k = 0; k < m; ++k) {
        label[static_cast<std::size_t>(2 * k)] = i[static_cast<std::size_t>(k)];
        label[static_cast<std::size_t>(2 * k + 1)] = j[static_cast<std::size_t>(k)];
        seq.push_back(2 * k);
        seq.push_back(2 * sigma(k) + 1);
    }
    Exponents q;
    int sign = 1;
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b)
            if (seq[a] > seq[b]) {
                // xi_x xi_y = -q_{y,x} xi_y xi_x
                sign = -sign;
                q = q * Exponents::var(label[static_cast<std::size_t>(seq[b])],
                                       label[static_cast<std::size_t>(seq[a])], 1);
            }
    return ctx.lift(q) * RationalFunction(sign);
}

ShadowElement ProjectorSpec::apply_word(const ContextPtr& ctx, const Word& w) const {
    switch (kind_) {
        case Kind::Identity:
            return monomial(ctx, w);
        case Kind::Table: {
            auto it = table_.find(w);
            return it == table_.end() ? monomial(ctx, w) : it->second;
        }
        case Kind::BuiltinN2:
            break;
    }
    std::vector<int> is, js;
    Word rest;
    for (const auto& g : w) {
        if (g.leaves() == 2) {
            is.push_back(g.left().label());
            js.push_back(g.right().label());
        } else {
            rest.push_back(g);
        }
    }
    const int m = static_cast<int>(is.size());
    if (m <= 1) return monomial(ctx, w);
    const auto perms = all_permutations(m);
    std::vector<RationalFunction> b;
    RationalFunction norm;
    for (const auto& s : perms) {
        b.push_back(braiding_factor(*ctx, is, js, s));
        norm += b.back() * b.back();
    }
    ShadowElement out(ctx);
    for (std::size_t k = 0; k < perms.size(); ++k) {
        Word v;
        for (int mu = 0; mu < m; ++mu)
            v.push_back(LabelledTree::node(LabelledTree(is[static_cast<std::size_t>(mu)]),
                                           LabelledTree(js[static_cast<std::size_t>(perms[k](mu))])));
        v.insert(v.end(), rest.begin(), rest.end());
        out += shadow_word(ctx, v, b[k] / norm);
    }
    return out;
}

ShadowElement apply_projector(const ProjectorSpec& p, const ShadowElement& a) {
    const auto& ctx = a.context();
    if (p.kind() == ProjectorSpec::Kind::BuiltinN2 && ctx->N() != 2)
        throw ConfigError("the built-in projector needs N = 2");
    ShadowElement r(ctx);
    for (const auto& [w, c] : a.terms()) r += p.apply_word(ctx, w).scaled(c);
    return r;
}

ShadowElement star_P(const ProjectorSpec& p, const ShadowElement& a, const ShadowElement& b) {
    return apply_projector(p, star_weyl(apply_projector(p, a), apply_projector(p, b)));
}

ShadowElement bracket_P(const ProjectorSpec& p, const ShadowElement& a, const ShadowElement& b) {
    return apply_projector(p, bracket_weyl(apply_projector(p, a), apply_projector(p, b)));
}

namespace {

ShadowElement tree_bracket_at(const Shape& t, const ProjectorSpec& p, const std::vector<ShadowElement>& args,
                              std::size_t offset) {
    if (t.is_leaf()) return apply_projector(p, args[offset]);
    const Shape l = t.left();
    return bracket_P(p, tree_bracket_at(l, p, args, offset),
                     tree_bracket_at(t.right(), p, args, offset + static_cast<std::size_t>(l.leaves())));
}

}  // namespace

ShadowElement tree_bracket(const Shape& t, const ProjectorSpec& p, const std::vector<ShadowElement>& args) {
    if (static_cast<std::size_t>(t.leaves()) != args.size())
        throw std::invalid_argument("tree_bracket: shape has " + std::to_string(t.leaves()) + " leaves but " +
                                    std::to_string(args.size()) + " arguments were given");
    return tree_bracket_at(t, p, args, 0);
}

void TwistSpec::set(const Word& left, const Word& right, const ShadowElement& value) {
    if (left.empty() || right.empty()) throw std::invalid_argument("twist entries need nonempty words");
    if (value.is_zero())
        table_.erase({left, right});
    else
        table_.insert_or_assign({left, right}, value);
}

const ShadowElement* TwistSpec::find(const Word& left, const Word& right) const {
    auto it = table_.find({left, right});
    return it == table_.end() ? nullptr : &it->second;
}

TwistSpec TwistSpec::from_json(const ContextPtr& ctx, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("twist table must be an array", 0);
    TwistSpec r;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("key") || !entry.contains("value") || !entry["key"].is_array() ||
            entry["key"].size() != 2)
            throw ParseError("twist entry needs a two-element key and a value", 0);
        auto left = as_basis_word(ctx, json_word(entry["key"][0]));
        auto right = as_basis_word(ctx, json_word(entry["key"][1]));
        if (!left || !right) continue;
        auto value = shadow_from_json(ctx, entry["value"]);
        r.set(left->second, right->second, value.scaled((left->first * right->first).inverse()));
    }
    return r;
}

TwistSpec TwistSpec::from_normal_star(const ContextPtr& ctx) {
    TwistSpec r;
    const auto gens = enumerate_positive(ctx->d(), ctx->N());
    for (const auto& g : gens)
        for (const auto& gp : gens) {
            auto a = generator<AlgebraKind::Shadow>(ctx, g);
            auto b = generator<AlgebraKind::Shadow>(ctx, gp);
            auto jump = star_normal(a, b) - a * b;
            if (!jump.is_zero()) r.set({g}, {gp}, jump);
        }
    return r;
}

namespace {

Word pick(const Word& w, unsigned mask, bool inside) {
    Word out;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (((mask >> k) & 1u) == (inside ? 1u : 0u)) out.push_back(w[k]);
    return out;
}

}  // namespace

ShadowElement star_R(const TwistSpec& r, const ShadowElement& a, const ShadowElement& b) {
    a.check(b);
    const auto& ctx = a.context();
    ShadowElement out(ctx);
    // the subset sum is read on basis monomials, factors non-increasing
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            const RationalFunction c = cu * cv;
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            out += shadow_word(ctx, uv, c);
            if (r.empty()) continue;
            for (unsigned I = 1; I < (1u << u.size()); ++I)
                for (unsigned J = 1; J < (1u << v.size()); ++J) {
                    const ShadowElement* val = r.find(pick(u, I, true), pick(v, J, true));
                    if (!val) continue;
                    Word rest = pick(u, I, false);
                    Word rv = pick(v, J, false);
                    rest.insert(rest.end(), rv.begin(), rv.end());
                    out += *val * shadow_word(ctx, rest, c);
                }
        }
    return out;
}

QybeReport qybe_residual(const ContextPtr& ctx, const TwistSpec& r, const LabelledTree& g, const LabelledTree& gp,
                         const std::vector<ShadowElement>& probes) {
    auto hg = generator<AlgebraKind::Shadow>(ctx, g);
    auto hgp = generator<AlgebraKind::Shadow>(ctx, gp);
    auto hj = generator<AlgebraKind::Shadow>(ctx, LabelledTree::node(g, gp));
    const RationalFunction q = ctx->lift(q_pair(gp, g));
    QybeReport rep;
    for (const auto& p : probes) {
        auto res = star_R(r, hg, star_R(r, hgp, p));
        res -= star_R(r, hgp, star_R(r, hg, p)).scaled(q);
        res -= star_R(r, hj, p);
        rep.max_support = std::max(rep.max_support, res.size());
        rep.residuals.push_back(std::move(res));
    }
    return rep;
}

}  // namespace epoche
