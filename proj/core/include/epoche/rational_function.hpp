#pragma once

#include "epoche/laurent.hpp"

#include <string>
#include <utility>
#include <vector>

namespace epoche {

// Quotient num / prod(f_k^e_k). Denominator factors are kept apart, each
// normalized by LaurentPolynomial::split_unit, so sums only multiply by the
// factors that are missing. The representation is not canonical; equality is
// decided by cross-multiplication.
class RationalFunction {
public:
    using Factor = std::pair<LaurentPolynomial, int>;

    RationalFunction() = default;
    RationalFunction(const LaurentPolynomial& p) : num_(p) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const mpq_class& c) : num_(c) {}           // NOLINT
    RationalFunction(long c) : num_(c) {}                       // NOLINT
    static RationalFunction quotient(const LaurentPolynomial& num, const LaurentPolynomial& den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    bool is_polynomial() const { return den_.empty(); }
    mpq_class constant_value() const { return num_.constant_value(); }

    const LaurentPolynomial& numerator() const { return num_; }
    const std::vector<Factor>& denominator_factors() const { return den_; }
    LaurentPolynomial denominator() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction inverse() const;

    mpq_class evaluate(const Specialization& s) const;

    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    // "p" for polynomials, "(p)/(d)" otherwise.
    std::string to_string() const;

private:
    LaurentPolynomial num_;
    std::vector<Factor> den_;  // sorted by polynomial, positive exponents
    void cancel();
};

}  // namespace epoche
