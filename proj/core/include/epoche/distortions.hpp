#pragma once

#include "epoche/quantize.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace epoche {

// Linear map on the truncated shadow, given on basis monomials.
class ProjectorSpec {
public:
    enum class Kind { Identity, BuiltinN2, Table };

    static ProjectorSpec identity() { return ProjectorSpec(Kind::Identity); }
    // Throws ConfigError unless ctx->N() == 2.
    static ProjectorSpec builtin_n2(const ContextPtr& ctx);
    // Unlisted monomials are fixed.
    static ProjectorSpec table(std::map<Word, ShadowElement> images);
    // [{"key": ["[1,2]", "1"], "value": <element JSON>}, ...]
    static ProjectorSpec from_json(const ContextPtr& ctx, const nlohmann::json& j);

    Kind kind() const { return kind_; }
    ShadowElement apply_word(const ContextPtr& ctx, const Word& w) const;

private:
    explicit ProjectorSpec(Kind k) : kind_(k) {}
    Kind kind_;
    std::map<Word, ShadowElement> table_;
};

ShadowElement apply_projector(const ProjectorSpec& p, const ShadowElement& a);

// Braiding factor b(sigma) of the N = 2 symmetrizer for the pairs (i_mu, j_mu).
RationalFunction braiding_factor(const Context& ctx, const std::vector<int>& i, const std::vector<int>& j,
                                 const Permutation& sigma);

// P(star_weyl(P a, P b))
ShadowElement star_P(const ProjectorSpec& p, const ShadowElement& a, const ShadowElement& b);
// P(bracket_weyl(P a, P b))
ShadowElement bracket_P(const ProjectorSpec& p, const ShadowElement& a, const ShadowElement& b);
// Nested bracket_P along t. Throws std::invalid_argument on arity mismatch.
ShadowElement tree_bracket(const Shape& t, const ProjectorSpec& p, const std::vector<ShadowElement>& args);

// Values of R on pairs of generator words. R(1,1) = 1 and R vanishes when exactly
// one argument is empty; missing entries are zero.
class TwistSpec {
public:
    TwistSpec() = default;
    void set(const Word& left, const Word& right, const ShadowElement& value);
    // Value on (h_left, h_right), or nullptr when zero.
    const ShadowElement* find(const Word& left, const Word& right) const;
    bool empty() const { return table_.empty(); }
    const std::map<std::pair<Word, Word>, ShadowElement>& entries() const { return table_; }

    // keys are [tree, tree] or [[trees], [trees]]
    static TwistSpec from_json(const ContextPtr& ctx, const nlohmann::json& j);
    // R(h_g, h_g') = degree-jump part of h_g * h_g' under the normal star product,
    // for all positive g, g' within the truncation.
    static TwistSpec from_normal_star(const ContextPtr& ctx);

private:
    std::map<std::pair<Word, Word>, ShadowElement> table_;
};

ShadowElement star_R(const TwistSpec& r, const ShadowElement& a, const ShadowElement& b);

struct QybeReport {
    std::vector<ShadowElement> residuals;  // one per probe
    std::size_t max_support = 0;
    bool all_zero() const { return max_support == 0; }
};

// (L_g L_g' - q(g',g) L_g' L_g - L_{[g,g']})(probe) with L_x = h_x star_R (-).
QybeReport qybe_residual(const ContextPtr& ctx, const TwistSpec& r, const LabelledTree& g, const LabelledTree& gp,
                         const std::vector<ShadowElement>& probes);

}  // namespace epoche
