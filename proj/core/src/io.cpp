#include "epoche/io.hpp"

#include "epoche/errors.hpp"

#include <cctype>

namespace epoche {

std::string format_word(const Word& w) {
    std::string s;
    for (const auto& g : w) {
        if (!s.empty()) s += ' ';
        s += g.is_leaf() ? "h[" + g.to_string() + "]" : "h" + g.to_string();
    }
    return s;
}

namespace {

// Coefficient with its sign pulled out when that reads cleanly.
std::pair<bool, std::string> signed_coefficient(const RationalFunction& c) {
    if (c.is_polynomial() && c.numerator().is_monomial()) {
        const auto& [m, x] = c.numerator().terms()[0];
        bool neg = x < 0;
        mpq_class a = abs(x);
        std::string mono = format_exponents(m);
        if (mono.empty()) return {neg, a.get_str()};
        return {neg, a == 1 ? mono : a.get_str() + " " + mono};
    }
    if (c.is_polynomial()) return {false, "(" + c.numerator().to_string() + ")"};
    return {false, c.to_string()};
}

}  // namespace

std::string format_coefficient(const RationalFunction& c) {
    auto [neg, s] = signed_coefficient(c);
    return neg ? "-" + s : s;
}

template <AlgebraKind K>
std::string format_element(const Element<K>& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : e.terms()) {
        auto [neg, s] = signed_coefficient(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (w.empty()) {
            out += s;
        } else {
            if (s != "1") out += s + " * ";
            out += format_word(w);
        }
    }
    return out;
}

template std::string format_element(const ShadowElement&);
template std::string format_element(const EnvelopeElement&);

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() {
        ws();
        return pos >= s.size();
    }
    char peek() {
        ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    mpz_class integer() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected integer");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }

    int small_int() {
        bool neg = accept('-');
        mpz_class v = integer();
        if (!v.fits_sint_p()) fail("integer too large");
        return neg ? -static_cast<int>(v.get_si()) : static_cast<int>(v.get_si());
    }

    mpq_class rational() {
        mpz_class n = integer();
        mpz_class d = 1;
        if (peek() == '/' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
            ++pos;
            d = integer();
            if (d == 0) fail("zero denominator");
        }
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }

    // q[i,j] with optional ^e
    Exponents qfactor() {
        expect('q');
        expect('[');
        int i = small_int();
        expect(',');
        int j = small_int();
        expect(']');
        if (i < 1 || j < 1) fail("q index must be positive");
        int e = 1;
        if (accept('^')) e = small_int();
        return Exponents::var(i, j, e);
    }

    // product of rationals and q-factors; false if nothing was read
    bool monomial(LaurentPolynomial& out) {
        mpq_class c = 1;
        Exponents m;
        bool any = false;
        while (true) {
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= rational();
            } else if (ch == 'q') {
                m = m * qfactor();
            } else {
                break;
            }
            any = true;
        }
        if (any) out = LaurentPolynomial(m, c);
        return any;
    }

    LaurentPolynomial polynomial() {
        LaurentPolynomial p;
        bool first = true;
        while (true) {
            bool neg = false;
            if (accept('-')) {
                neg = true;
            } else if (!first) {
                if (!accept('+')) break;
            }
            LaurentPolynomial m;
            if (!monomial(m)) fail("expected polynomial term");
            p += neg ? -m : m;
            first = false;
        }
        return p;
    }

    // factor := monomial | '(' poly ')' ['/' '(' poly ')']
    bool coefficient(RationalFunction& out) {
        RationalFunction c(1);
        bool any = false;
        while (true) {
            char ch = peek();
            if (ch == '(') {
                ++pos;
                LaurentPolynomial num = polynomial();
                expect(')');
                RationalFunction f(num);
                if (peek() == '/') {
                    ++pos;
                    expect('(');
                    LaurentPolynomial den = polynomial();
                    expect(')');
                    if (den.is_zero()) fail("zero denominator");
                    f = f / RationalFunction(den);
                }
                c *= f;
            } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == 'q') {
                LaurentPolynomial m;
                monomial(m);
                c *= RationalFunction(m);
            } else {
                break;
            }
            any = true;
        }
        if (any) out = c;
        return any;
    }

    LabelledTree tree() {
        ws();
        if (accept('[')) {
            auto l = tree();
            expect(',');
            auto r = tree();
            expect(']');
            return LabelledTree::node(l, r);
        }
        ws();
        if (pos >= s.size() || s[pos] < '1' || s[pos] > '9') fail("expected leaf label");
        mpz_class v = integer();
        if (v > 0xffff) fail("leaf label too large");
        return LabelledTree(static_cast<int>(v.get_si()));
    }

    // h[label] or h[tree,tree]
    LabelledTree gen() {
        expect('h');
        expect('[');
        auto first = tree();
        if (accept(',')) {
            auto second = tree();
            expect(']');
            return LabelledTree::node(first, second);
        }
        expect(']');
        return first;
    }

    std::vector<RawTerm> element() {
        std::vector<RawTerm> out;
        if (at_end()) fail("empty element");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (accept('-'))
                sign = -1;
            else if (!first && !accept('+'))
                fail("expected '+' or '-'");
            first = false;
            RawTerm t{RationalFunction(sign), {}};
            RationalFunction c;
            bool has_coeff = coefficient(c);
            if (has_coeff) t.coeff *= c;
            if (!has_coeff && peek() == '*') fail("expected coefficient before '*'");
            bool star = accept('*');
            while (peek() == 'h') t.word.push_back(gen());
            if (!has_coeff && t.word.empty()) fail("expected term");
            if (star && t.word.empty()) fail("expected generator after '*'");
            out.push_back(std::move(t));
        }
        return out;
    }
};

template <AlgebraKind K>
Element<K> build(const ContextPtr& ctx, const std::vector<RawTerm>& terms) {
    Element<K> e(ctx);
    for (const auto& t : terms) {
        auto c = ctx->lift(t.coeff);
        if constexpr (K == AlgebraKind::Shadow)
            e += shadow_word(ctx, t.word, c);
        else
            e += normal_order(ctx, t.word, c);
    }
    return e;
}

}  // namespace

std::vector<RawTerm> parse_terms(std::string_view text) {
    Parser p{text};
    return p.element();
}

RationalFunction parse_coefficient(std::string_view text) {
    Parser p{text};
    bool neg = p.accept('-');
    RationalFunction c;
    if (!p.coefficient(c)) p.fail("expected coefficient");
    if (!p.at_end()) p.fail("trailing characters after coefficient");
    return neg ? -c : c;
}

ShadowElement parse_shadow(const ContextPtr& ctx, std::string_view text) {
    return build<AlgebraKind::Shadow>(ctx, parse_terms(text));
}

EnvelopeElement parse_envelope(const ContextPtr& ctx, std::string_view text) {
    return build<AlgebraKind::Envelope>(ctx, parse_terms(text));
}

template <AlgebraKind K>
nlohmann::json element_to_json(const Element<K>& e) {
    auto out = nlohmann::json::array();
    for (const auto& [w, c] : e.terms()) {
        nlohmann::json t;
        t["coeff_num"] = c.numerator().to_string();
        t["coeff_den"] = c.denominator().to_string();
        auto mono = nlohmann::json::array();
        for (const auto& g : w) mono.push_back(g.to_string());
        t["monomial"] = mono;
        out.push_back(t);
    }
    return out;
}

template nlohmann::json element_to_json(const ShadowElement&);
template nlohmann::json element_to_json(const EnvelopeElement&);

namespace {

LaurentPolynomial json_poly(const nlohmann::json& j) {
    if (j.is_number_integer()) return LaurentPolynomial(j.get<long>());
    if (!j.is_string()) throw ParseError("coefficient must be a string or integer", 0);
    Parser p{j.get_ref<const std::string&>()};
    auto poly = p.polynomial();
    if (!p.at_end()) p.fail("trailing characters in coefficient");
    return poly;
}

}  // namespace

std::vector<RawTerm> terms_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("element JSON must be an array", 0);
    std::vector<RawTerm> out;
    std::size_t index = 0;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff_num") || !t.contains("monomial") || !t["monomial"].is_array())
            throw ParseError("malformed term", index);
        LaurentPolynomial num = json_poly(t["coeff_num"]);
        LaurentPolynomial den = t.contains("coeff_den") ? json_poly(t["coeff_den"]) : LaurentPolynomial(1);
        if (den.is_zero()) throw ParseError("zero denominator", index);
        RawTerm r{RationalFunction(num) / RationalFunction(den), {}};
        for (const auto& g : t["monomial"]) {
            if (!g.is_string()) throw ParseError("tree must be a string", index);
            r.word.push_back(parse_tree(g.get_ref<const std::string&>()));
        }
        out.push_back(std::move(r));
        ++index;
    }
    return out;
}

ShadowElement shadow_from_json(const ContextPtr& ctx, const nlohmann::json& j) {
    return build<AlgebraKind::Shadow>(ctx, terms_from_json(j));
}

EnvelopeElement envelope_from_json(const ContextPtr& ctx, const nlohmann::json& j) {
    return build<AlgebraKind::Envelope>(ctx, terms_from_json(j));
}

}  // namespace epoche
