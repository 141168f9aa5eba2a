#include "epoche/context.hpp"

#include "epoche/errors.hpp"
#include "cache.hpp"

#include <sstream>

namespace epoche {

Context::Context(int d, int N, std::optional<Specialization> spec)
    : d_(d), N_(N), spec_(std::move(spec)), cache_(std::make_shared<ContextCache>()) {
    if (d < 1) throw ConfigError("d must be at least 1");
    if (N < 1) throw ConfigError("N must be at least 1");
    if (spec_) {
        for (const auto& [v, x] : spec_->values)
            if (x <= 0) throw ConfigError("specialized q values must be positive");
        if (spec_->fallback == 0) throw ConfigError("specialized q values must be nonzero");
    }
}

RationalFunction Context::lift(const Exponents& m) const {
    if (spec_) return RationalFunction(spec_->evaluate(m));
    return RationalFunction(LaurentPolynomial(m));
}

RationalFunction Context::lift(const LaurentPolynomial& p) const {
    if (spec_) return RationalFunction(p.evaluate(*spec_));
    return RationalFunction(p);
}

RationalFunction Context::lift(const RationalFunction& f) const {
    if (spec_ && !f.is_constant()) return RationalFunction(f.evaluate(*spec_));
    return f;
}

std::string Context::describe() const {
    std::ostringstream out;
    out << "d=" << d_ << " N=" << N_ << " q=";
    if (!spec_) {
        out << "symbolic";
    } else if (spec_->values.empty()) {
        out << "all:" << spec_->fallback.get_str();
    } else {
        bool first = true;
        for (const auto& [v, x] : spec_->values) {
            auto [i, j] = qvar_pair(v);
            out << (first ? "" : ";") << i << "," << j << "=" << x.get_str();
            first = false;
        }
    }
    return out.str();
}

std::optional<Specialization> parse_specialization(const std::string& text) {
    if (text.empty() || text == "symbolic") return std::nullopt;
    Specialization s;
    if (text == "all-ones" || text == "ones") return s;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        auto comma = item.find(',');
        if (eq == std::string::npos || comma == std::string::npos || comma > eq)
            throw ConfigError("bad specialization entry '" + item + "'");
        try {
            int i = std::stoi(item.substr(0, comma));
            int j = std::stoi(item.substr(comma + 1, eq - comma - 1));
            if (i < 1 || j < 1) throw ConfigError("bad specialization entry '" + item + "'");
            mpq_class x(item.substr(eq + 1));
            x.canonicalize();
            if (x <= 0) throw ConfigError("specialized q values must be positive");
            if (i == j) throw ConfigError("q[i,i] is fixed to 1");
            if (i < j)
                s.values[qvar_index(i, j)] = x;
            else
                s.values[qvar_index(j, i)] = 1 / x;
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad specialization entry '" + item + "'");
        }
    }
    return s;
}

}  // namespace epoche
