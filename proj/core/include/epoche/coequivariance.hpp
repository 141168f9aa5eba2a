#pragma once

#include "epoche/coeffs.hpp"
#include "epoche/context.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace epoche {

// Generator A[g, g'] of the free algebra on pairs of positive trees.
using MatrixGen = std::pair<LabelledTree, LabelledTree>;
using FreeWord = std::vector<MatrixGen>;

class FreeElement {
public:
    using Terms = std::map<FreeWord, RationalFunction>;

    explicit FreeElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const FreeWord& w, const RationalFunction& c);
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    FreeElement scaled(const RationalFunction& c) const;
    FreeElement operator*(const FreeElement& o) const;  // concatenation
    bool operator==(const FreeElement& o) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    Terms terms_;
};

FreeElement free_generator(const ContextPtr& ctx, const LabelledTree& row, const LabelledTree& col);

// The two quantum-matrix relation families for rows (g1, g2) and columns (h1, h2):
//   A[g2,h1] A[g1,h2] + q(h1,h2) A[g2,h2] A[g1,h1] - q(g1,g2) (A[g1,h1] A[g2,h2] + q(h1,h2) A[g1,h2] A[g2,h1])
//   A[g1,h2] A[g2,h1] + q(g1,g2) A[g2,h2] A[g1,h1] - q(h1,h2) (A[g1,h1] A[g2,h2] + q(g1,g2) A[g2,h1] A[g1,h2])
std::pair<FreeElement, FreeElement> relations(const ContextPtr& ctx, const LabelledTree& g1, const LabelledTree& g2,
                                              const LabelledTree& h1, const LabelledTree& h2);

// L_n(G, H) = sum_k A[G_1, H_k(1)] ... A[G_n, H_k(n)] q_perm(H, k)
FreeElement L_n(const ContextPtr& ctx, const std::vector<LabelledTree>& G, const std::vector<LabelledTree>& H);
// R_n(G, H) = sum_k A[G_k(1), H_1] ... A[G_k(n), H_n] q_perm(G, k)
FreeElement R_n(const ContextPtr& ctx, const std::vector<LabelledTree>& G, const std::vector<LabelledTree>& H);

// Membership of a degree-3 element in the two-sided ideal of the relations,
// restricted to the component with row multiset G and column multiset H.
// Exact over Q; requires a fully specialized context.
bool in_ideal_degree3(const ContextPtr& ctx, const FreeElement& target, const std::vector<LabelledTree>& G,
                      const std::vector<LabelledTree>& H);

struct PropertyResult {
    std::string property;
    int n = 0;
    std::string instance;
    std::string mode;  // "symbolic" or "specialized xK"
    bool pass = true;
    std::string counterexample;
};

// Checks L_n(G_s, H) = q_perm(G, s) L_n(G, H) and R_n(G, H_s) = q_perm(H, s) R_n(G, H)
// modulo the relations. n = 2: the difference must be a monomial multiple of a
// single relation (symbolic). n = 3: the difference must lie in the degree-3 part
// of the two-sided ideal, tested by exact linear algebra under `specializations`
// random positive rational values of the q's.
std::vector<PropertyResult> verify_Ln_transform(int d, int N, int n, int trials, std::uint64_t seed,
                                                int specializations = 3);

}  // namespace epoche
