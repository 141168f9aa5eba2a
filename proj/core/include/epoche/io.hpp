#pragma once

#include "epoche/algebra.hpp"

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epoche {

// Text form: "coeff * h[t1] h[t2] + ...". A generator is written h[1] for a
// leaf and h[[1,2],3] for a tree. Coefficients are rationals, q-monomials
// such as "3/2 q[1,2]^-1 q[1,3]^2", or "(p)" and "(p)/(p)" for general ones.
std::string format_word(const Word& w);
std::string format_coefficient(const RationalFunction& c);

template <AlgebraKind K>
std::string format_element(const Element<K>& e);

// One parsed summand: coefficient times the word, as written (unordered).
struct RawTerm {
    RationalFunction coeff;
    Word word;
};

std::vector<RawTerm> parse_terms(std::string_view text);
RationalFunction parse_coefficient(std::string_view text);

// Words are multiplied out in the respective algebra.
ShadowElement parse_shadow(const ContextPtr& ctx, std::string_view text);
EnvelopeElement parse_envelope(const ContextPtr& ctx, std::string_view text);

// [{"coeff_num": "...", "coeff_den": "...", "monomial": ["[1,2]", "1"]}, ...]
template <AlgebraKind K>
nlohmann::json element_to_json(const Element<K>& e);
std::vector<RawTerm> terms_from_json(const nlohmann::json& j);
ShadowElement shadow_from_json(const ContextPtr& ctx, const nlohmann::json& j);
EnvelopeElement envelope_from_json(const ContextPtr& ctx, const nlohmann::json& j);

}  // namespace epoche
