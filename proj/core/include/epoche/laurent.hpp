#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace epoche {

// Index of the variable q[i,j], i < j. Independent of d.
int qvar_index(int i, int j);
std::pair<int, int> qvar_pair(int index);

// A monomial in the q[i,j]: sorted (variable, nonzero exponent) pairs.
class Exponents {
public:
    Exponents() = default;
    static Exponents var(int i, int j, int power = 1);  // q[i,j]^power with i != j; q[j,i] = q[i,j]^-1

    bool is_one() const { return e_.empty(); }
    const std::vector<std::pair<int, int>>& entries() const { return e_; }
    int exponent(int var) const;

    Exponents operator*(const Exponents& o) const;
    Exponents inverse() const;
    Exponents pow(int k) const;

    friend bool operator==(const Exponents&, const Exponents&) = default;
    friend auto operator<=>(const Exponents&, const Exponents&) = default;

private:
    std::vector<std::pair<int, int>> e_;
};

// Assignment of rational values to the q[i,j]; unspecified variables default to `fallback`.
struct Specialization {
    std::map<int, mpq_class> values;
    mpq_class fallback = 1;

    mpq_class value(int var) const;
    mpq_class evaluate(const Exponents& m) const;
    bool operator==(const Specialization& o) const { return values == o.values && fallback == o.fallback; }
};

class LaurentPolynomial {
public:
    using Term = std::pair<Exponents, mpq_class>;

    LaurentPolynomial() = default;
    LaurentPolynomial(const mpq_class& c);  // NOLINT(google-explicit-constructor)
    LaurentPolynomial(long c) : LaurentPolynomial(mpq_class(c)) {}  // NOLINT
    LaurentPolynomial(const Exponents& m, const mpq_class& c = 1);

    static LaurentPolynomial q(int i, int j, int power = 1) { return {Exponents::var(i, j, power)}; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    bool is_monomial() const { return terms_.size() == 1; }
    mpq_class constant_value() const;  // requires is_constant()
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return *this = *this + o; }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return *this = *this - o; }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }
    LaurentPolynomial scaled(const mpq_class& c, const Exponents& m) const;
    LaurentPolynomial pow(unsigned k) const;

    mpq_class evaluate(const Specialization& s) const;

    // Exact quotient if `divisor` divides *this in the Laurent ring, else nullopt.
    std::optional<LaurentPolynomial> divide(const LaurentPolynomial& divisor) const;

    // Writes *this = unit * p with unit a rational times a q-monomial and p a
    // polynomial with integer coprime coefficients, no monomial factor and
    // positive leading coefficient. Requires non-zero.
    std::pair<LaurentPolynomial, LaurentPolynomial> split_unit() const;

    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;
    friend std::strong_ordering operator<=>(const LaurentPolynomial& a, const LaurentPolynomial& b);

    // e.g. "3/2 q[1,2]^-1 q[1,3]^2 - 1"
    std::string to_string() const;

private:
    std::vector<Term> terms_;  // sorted by exponents, nonzero coefficients
    void normalize();
    friend class LaurentBuilder;
};

std::string format_exponents(const Exponents& m);

}  // namespace epoche
