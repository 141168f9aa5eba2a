#pragma once

#include "epoche/laurent.hpp"
#include "epoche/rational_function.hpp"

#include <memory>
#include <optional>
#include <string>

namespace epoche {

struct ContextCache;

// d: number of variable pairs (leaf labels 1..2d). N: truncation, trees with
// more than N leaves vanish. With a specialization every coefficient is
// evaluated to a rational number as soon as it is created.
class Context {
public:
    Context(int d, int N, std::optional<Specialization> spec = std::nullopt);
    static std::shared_ptr<const Context> make(int d, int N, std::optional<Specialization> spec = std::nullopt) {
        return std::make_shared<const Context>(d, N, std::move(spec));
    }

    int d() const { return d_; }
    int N() const { return N_; }
    int labels() const { return 2 * d_; }
    bool symbolic() const { return !spec_.has_value(); }
    const std::optional<Specialization>& specialization() const { return spec_; }

    RationalFunction lift(const Exponents& m) const;
    RationalFunction lift(const LaurentPolynomial& p) const;
    RationalFunction lift(const RationalFunction& f) const;

    bool operator==(const Context& o) const { return d_ == o.d_ && N_ == o.N_ && spec_ == o.spec_; }
    std::string describe() const;

    ContextCache& cache() const { return *cache_; }

private:
    int d_;
    int N_;
    std::optional<Specialization> spec_;
    std::shared_ptr<ContextCache> cache_;
};

using ContextPtr = std::shared_ptr<const Context>;

// Parses "symbolic", "all-ones", or "1,2=3/2;1,3=2" (unlisted variables are 1).
std::optional<Specialization> parse_specialization(const std::string& text);

}  // namespace epoche
