#include "epoche/rational_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace epoche {

namespace {

using Factors = std::vector<RationalFunction::Factor>;

// Adds factor^e into a sorted factor list.
void add_factor(Factors& fs, const LaurentPolynomial& f, int e) {
    auto it = std::lower_bound(fs.begin(), fs.end(), f, [](const auto& a, const auto& p) { return a.first < p; });
    if (it != fs.end() && it->first == f)
        it->second += e;
    else
        fs.insert(it, {f, e});
}

LaurentPolynomial product(const LaurentPolynomial& base, const Factors& fs) {
    LaurentPolynomial r = base;
    for (const auto& [f, e] : fs) r *= f.pow(static_cast<unsigned>(e));
    return r;
}

}  // namespace

RationalFunction RationalFunction::quotient(const LaurentPolynomial& num, const LaurentPolynomial& den) {
    return RationalFunction(num) / RationalFunction(den);
}

LaurentPolynomial RationalFunction::denominator() const { return product(LaurentPolynomial(1), den_); }

void RationalFunction::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [f, e] : den_) {
        while (e > 0) {
            auto q = num_.divide(f);
            if (!q) break;
            num_ = std::move(*q);
            --e;
        }
    }
    std::erase_if(den_, [](const Factor& x) { return x.second == 0; });
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_.empty() && o.den_.empty()) return RationalFunction(num_ + o.num_);
    if (den_ == o.den_) {
        RationalFunction r;
        r.num_ = num_ + o.num_;
        r.den_ = den_;
        r.cancel();
        return r;
    }
    // lcm of the formal factorizations
    Factors lcm = den_, need_a, need_b;
    for (const auto& [f, e] : o.den_) {
        auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& x) { return x.first == f; });
        if (it == lcm.end())
            add_factor(lcm, f, e);
        else
            it->second = std::max(it->second, e);
    }
    for (const auto& [f, e] : lcm) {
        int ea = 0, eb = 0;
        for (const auto& [g, k] : den_)
            if (g == f) ea = k;
        for (const auto& [g, k] : o.den_)
            if (g == f) eb = k;
        if (e > ea) need_a.emplace_back(f, e - ea);
        if (e > eb) need_b.emplace_back(f, e - eb);
    }
    RationalFunction r;
    r.num_ = product(num_, need_a) + product(o.num_, need_b);
    r.den_ = std::move(lcm);
    r.cancel();
    return r;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return {};
    RationalFunction r;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    for (const auto& [f, e] : o.den_) add_factor(r.den_, f, e);
    if (!r.den_.empty()) r.cancel();
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
    RationalFunction r;
    auto [unit, rest] = num_.split_unit();
    const auto& [m, c] = unit.terms()[0];
    r.num_ = product(LaurentPolynomial(m.inverse(), 1 / c), den_);
    if (!rest.is_constant()) r.den_.emplace_back(rest, 1);
    r.cancel();
    return r;
}

mpq_class RationalFunction::evaluate(const Specialization& s) const {
    mpq_class n = num_.evaluate(s);
    mpq_class d = 1;
    for (const auto& [f, e] : den_) {
        mpq_class v = f.evaluate(s);
        if (v == 0) throw std::domain_error("specialization hits a pole");
        for (int k = 0; k < e; ++k) d *= v;
    }
    return n / d;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return (*this - o).is_zero();
}

std::string RationalFunction::to_string() const {
    if (den_.empty()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + denominator().to_string() + ")";
}

}  // namespace epoche
