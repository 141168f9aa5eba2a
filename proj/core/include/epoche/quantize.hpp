#pragma once

#include "epoche/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epoche {

// Normal ordering quantization: the identity on non-increasing monomials.
EnvelopeElement normal_Q(const ShadowElement& a);
ShadowElement dequantize_normal(const EnvelopeElement& x);

// Pull-back of the envelope product through normal_Q.
ShadowElement star_normal(const ShadowElement& a, const ShadowElement& b, RewriteStrategy strategy = {});

// Closed expansion of star_normal as a sum over block decompositions, tree
// shapes and shuffles, with coefficient q_perm^-1 and only non-increasing,
// positive outputs kept. Taken literally, see README for where it disagrees
// with star_normal.
ShadowElement star_normal_closed(const ShadowElement& a, const ShadowElement& b);

// Degree |u|+|v|+1 part of u*v - swap_coeff(v,u) v*u, extended bilinearly.
ShadowElement bracket_normal(const ShadowElement& a, const ShadowElement& b);

// Weyl quantization: W(h[G_1]...h[G_n]) = sum_s C(s) h^[G_s(1)] ... h^[G_s(n)].
EnvelopeElement weyl_W(const ShadowElement& a);
// Inverse of weyl_W by triangular correction. With max_degree >= 0 only the
// components up to that degree are guaranteed.
ShadowElement weyl_W_inverse(const EnvelopeElement& x, int max_degree = -1);

ShadowElement star_weyl(const ShadowElement& a, const ShadowElement& b);
// Same product through the alternating sum over chains l_1 < ... < l_r < m.
ShadowElement star_weyl_recursive(const ShadowElement& a, const ShadowElement& b);
// Degree |u|+|v|+1 part of u star_weyl v, extended bilinearly.
ShadowElement bracket_weyl(const ShadowElement& a, const ShadowElement& b);
// bracket_weyl(u,v) - swap_coeff(v,u) bracket_weyl(v,u), extended bilinearly.
ShadowElement bracket_weyl_antisym(const ShadowElement& a, const ShadowElement& b);

struct DistortionWitness {
    bool found = false;
    LabelledTree generator;  // two-leaf tree g
    Word u;                  // monomial in one-leaf generators
    std::string detail;      // W(h[g] u) and h^[g] W(u)
};

// Searches for g with two leaves and a monomial u in one-leaf generators of
// length <= max_length with W(h[g] u) != h^[g] W(u).
DistortionWitness distortion_witness(const ContextPtr& ctx, int max_length = 3);

struct LambdaReport {
    bool exists = true;               // a single scalar relates the two brackets on all probed pairs
    std::vector<std::string> ratios;  // per pair: "<f> , <g> : ratio" or "not proportional"
};

// Compares bracket_weyl_antisym with bracket_weyl on (h1, h2) and (h1 h1, h2).
LambdaReport lambda_check(const ContextPtr& ctx);

}  // namespace epoche
