#include "epoche/laurent.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace epoche {

int qvar_index(int i, int j) {
    if (i < 1 || j <= i) throw std::invalid_argument("q variable needs 1 <= i < j");
    return (j - 1) * (j - 2) / 2 + (i - 1);
}

std::pair<int, int> qvar_pair(int index) {
    int j = 2;
    while ((j) * (j - 1) / 2 <= index) ++j;
    int i = index - (j - 1) * (j - 2) / 2 + 1;
    return {i, j};
}

Exponents Exponents::var(int i, int j, int power) {
    Exponents m;
    if (i == j || power == 0) return m;
    if (i < j)
        m.e_.emplace_back(qvar_index(i, j), power);
    else
        m.e_.emplace_back(qvar_index(j, i), -power);
    return m;
}

int Exponents::exponent(int var) const {
    for (const auto& [v, e] : e_)
        if (v == var) return e;
    return 0;
}

Exponents Exponents::operator*(const Exponents& o) const {
    Exponents r;
    r.e_.reserve(e_.size() + o.e_.size());
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            r.e_.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            r.e_.push_back(*b++);
        } else {
            int s = a->second + b->second;
            if (s != 0) r.e_.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    return r;
}

Exponents Exponents::inverse() const { return pow(-1); }

Exponents Exponents::pow(int k) const {
    Exponents r;
    if (k == 0) return r;
    r.e_ = e_;
    for (auto& [v, e] : r.e_) e *= k;
    return r;
}

mpq_class Specialization::value(int var) const {
    auto it = values.find(var);
    return it == values.end() ? fallback : it->second;
}

mpq_class Specialization::evaluate(const Exponents& m) const {
    mpq_class r = 1;
    for (const auto& [v, e] : m.entries()) {
        mpq_class x = value(v);
        if (x == 0) throw std::domain_error("specialization value is zero");
        mpq_class p = 1;
        for (int k = 0; k < std::abs(e); ++k) p *= x;
        if (e < 0) p = 1 / p;
        r *= p;
    }
    return r;
}

LaurentPolynomial::LaurentPolynomial(const mpq_class& c) {
    if (c != 0) terms_.emplace_back(Exponents{}, c);
}

LaurentPolynomial::LaurentPolynomial(const Exponents& m, const mpq_class& c) {
    if (c != 0) terms_.emplace_back(m, c);
}

mpq_class LaurentPolynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_[0].second;
}

void LaurentPolynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            r.terms_.push_back(*a++);
        } else if (a == terms_.end() || b->first < a->first) {
            r.terms_.push_back(*b++);
        } else {
            mpq_class s = a->second + b->second;
            if (s != 0) r.terms_.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const { return *this + (-o); }

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (o.terms_.size() == 1) return scaled(o.terms_[0].second, o.terms_[0].first);
    if (terms_.size() == 1) return o.scaled(terms_[0].second, terms_[0].first);
    LaurentPolynomial r;
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
    r.normalize();
    return r;
}

LaurentPolynomial LaurentPolynomial::scaled(const mpq_class& c, const Exponents& m) const {
    LaurentPolynomial r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [mt, ct] : terms_) r.terms_.emplace_back(mt * m, ct * c);
    if (!m.is_one()) r.normalize();  // multiplying by a monomial can reorder the terms
    return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
    LaurentPolynomial r(1);
    LaurentPolynomial base = *this;
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

mpq_class LaurentPolynomial::evaluate(const Specialization& s) const {
    mpq_class r = 0;
    for (const auto& [m, c] : terms_) r += c * s.evaluate(m);
    return r;
}

namespace {

using Dense = std::vector<int>;

struct DenseForm {
    std::vector<int> vars;
    std::map<Dense, mpq_class, std::greater<>> terms;  // lex-descending
};

std::vector<int> union_vars(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    std::vector<int> vs;
    for (const auto* p : {&a, &b})
        for (const auto& [m, c] : p->terms())
            for (const auto& [v, e] : m.entries()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// Dense exponents shifted so that every variable has minimum exponent 0.
// Returns the shift that was subtracted.
Dense to_dense(const LaurentPolynomial& p, const std::vector<int>& vars,
               std::map<Dense, mpq_class, std::greater<>>& out) {
    const std::size_t n = vars.size();
    std::vector<Dense> rows;
    for (const auto& [m, c] : p.terms()) {
        Dense d(n, 0);
        for (const auto& [v, e] : m.entries()) {
            auto it = std::lower_bound(vars.begin(), vars.end(), v);
            d[static_cast<std::size_t>(it - vars.begin())] = e;
        }
        rows.push_back(std::move(d));
    }
    Dense shift(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        int mn = rows.empty() ? 0 : rows[0][k];
        for (const auto& r : rows) mn = std::min(mn, r[k]);
        shift[k] = mn;
    }
    std::size_t i = 0;
    for (const auto& [m, c] : p.terms()) {
        Dense d = rows[i++];
        for (std::size_t k = 0; k < n; ++k) d[k] -= shift[k];
        out.emplace(std::move(d), c);
    }
    return shift;
}

Exponents from_dense(const Dense& d, const std::vector<int>& vars) {
    Exponents m;
    for (std::size_t k = 0; k < vars.size(); ++k)
        if (d[k] != 0) {
            auto [i, j] = qvar_pair(vars[k]);
            m = m * Exponents::var(i, j, d[k]);
        }
    return m;
}

}  // namespace

std::optional<LaurentPolynomial> LaurentPolynomial::divide(const LaurentPolynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return LaurentPolynomial{};
    if (divisor.is_monomial()) {
        const auto& [m, c] = divisor.terms_[0];
        return scaled(1 / c, m.inverse());
    }
    if (terms_.size() < divisor.terms_.size()) return std::nullopt;
    const auto vars = union_vars(*this, divisor);
    const std::size_t n = vars.size();
    std::map<Dense, mpq_class, std::greater<>> rem, div;
    Dense sa = to_dense(*this, vars, rem);
    Dense sb = to_dense(divisor, vars, div);
    const auto& [lead_b, lead_c] = *div.begin();
    std::vector<std::pair<Dense, mpq_class>> quotient;
    while (!rem.empty()) {
        const auto [lead_r, c] = *rem.begin();
        Dense e(n);
        for (std::size_t k = 0; k < n; ++k) {
            e[k] = lead_r[k] - lead_b[k];
            if (e[k] < 0) return std::nullopt;
        }
        mpq_class f = c / lead_c;
        for (const auto& [db, cb] : div) {
            Dense t(n);
            for (std::size_t k = 0; k < n; ++k) t[k] = db[k] + e[k];
            auto [it, inserted] = rem.emplace(t, 0);
            it->second -= f * cb;
            if (it->second == 0) rem.erase(it);
        }
        quotient.emplace_back(std::move(e), f);
    }
    Dense shift(n);
    for (std::size_t k = 0; k < n; ++k) shift[k] = sa[k] - sb[k];
    LaurentPolynomial q;
    for (auto& [e, c] : quotient) {
        for (std::size_t k = 0; k < n; ++k) e[k] += shift[k];
        q.terms_.emplace_back(from_dense(e, vars), c);
    }
    q.normalize();
    return q;
}

std::pair<LaurentPolynomial, LaurentPolynomial> LaurentPolynomial::split_unit() const {
    if (is_zero()) throw std::domain_error("split_unit of zero");
    // monomial part: per-variable minimum exponent
    std::map<int, int> mins;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first) {
            for (const auto& [v, e] : m.entries()) mins[v] = e;
            first = false;
            continue;
        }
        for (auto& [v, e] : mins) e = std::min(e, m.exponent(v));
        for (const auto& [v, e] : m.entries())
            if (!mins.count(v)) mins[v] = std::min(0, e);
    }
    Exponents shift;
    for (const auto& [v, e] : mins)
        if (e != 0) {
            auto [i, j] = qvar_pair(v);
            shift = shift * Exponents::var(i, j, e);
        }
    // content
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    if (terms_.back().second < 0) content = -content;
    LaurentPolynomial unit(shift, content);
    LaurentPolynomial rest = scaled(1 / content, shift.inverse());
    return {unit, rest};
}

std::strong_ordering operator<=>(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.terms_[i].first <=> b.terms_[i].first; c != 0) return c;
        int s = cmp(a.terms_[i].second, b.terms_[i].second);
        if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::string format_exponents(const Exponents& m) {
    std::string out;
    for (const auto& [v, e] : m.entries()) {
        auto [i, j] = qvar_pair(v);
        if (!out.empty()) out += ' ';
        out += "q[" + std::to_string(i) + "," + std::to_string(j) + "]";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string LaurentPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // highest terms first reads more naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpq_class a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono = format_exponents(m);
        if (mono.empty()) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + " ";
            out += mono;
        }
    }
    return out;
}

}  // namespace epoche
