#include "epoche/verify.hpp"

#include "epoche/coequivariance.hpp"
#include "epoche/distortions.hpp"
#include "epoche/io.hpp"
#include "epoche/quantize.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace epoche {

unsigned worker_count() {
    if (const char* env = std::getenv("EPOCHE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

bool SuiteReport::pass() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyReport& p) { return p.pass || p.informational; });
}

const PropertyReport* SuiteReport::find(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = config.seed;
    j["d"] = config.d;
    j["N"] = config.N;
    j["q"] = config.q;
    j["trials"] = config.trials;
    j["pass"] = pass();
    auto props = nlohmann::json::array();
    for (const auto& p : properties) {
        nlohmann::json x;
        x["name"] = p.name;
        x["pass"] = p.pass;
        x["informational"] = p.informational;
        x["instances"] = p.instances;
        x["mode"] = p.mode;
        x["counterexample"] = p.counterexample.empty() ? nlohmann::json() : nlohmann::json(p.counterexample);
        x["detail"] = p.detail;
        props.push_back(x);
    }
    j["properties"] = props;
    return j;
}

std::string SuiteReport::to_text() const {
    std::ostringstream out;
    out << "suite " << suite << "  d=" << config.d << " N=" << config.N << " q=" << config.q << " seed=" << config.seed
        << " trials=" << config.trials << "\n";
    for (const auto& p : properties) {
        out << (p.pass ? "PASS " : "FAIL ") << (p.informational ? "(info) " : "") << p.name << "  [" << p.instances
            << " instances, " << p.mode << "]\n";
        if (!p.counterexample.empty()) out << "      counterexample: " << p.counterexample << "\n";
        if (!p.detail.empty()) out << "      " << p.detail << "\n";
    }
    out << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"order", "rank",     "diamond",        "star-oracle",
                                                "q-poisson", "weyl", "cocycle",        "coequivariance",
                                                "distortion", "projector", "qybe"};
    return names;
}

namespace {

using Rng = std::mt19937_64;
using Failure = std::optional<std::string>;

struct Case {
    std::string text;
    std::size_t size = 0;
    std::function<Failure()> run;
};

PropertyReport evaluate(const std::string& name, const std::string& mode, const std::vector<Case>& cases,
                        bool informational = false) {
    auto results = parallel_map(cases.size(), [&](std::size_t i) { return cases[i].run(); });
    PropertyReport r;
    r.name = name;
    r.mode = mode;
    r.informational = informational;
    r.instances = cases.size();
    std::optional<std::size_t> smallest;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (!results[i]) continue;
        ++failures;
        if (!smallest || cases[i].size < cases[*smallest].size) smallest = i;
    }
    if (smallest) {
        r.pass = false;
        r.counterexample = cases[*smallest].text;
        if (!results[*smallest]->empty()) r.counterexample += " : " + *results[*smallest];
        r.detail = std::to_string(failures) + " of " + std::to_string(cases.size()) + " instances fail";
    }
    return r;
}

PropertyReport single(const std::string& name, const std::string& mode, bool pass, const std::string& detail,
                      std::uint64_t instances = 1, bool informational = false) {
    PropertyReport r;
    r.name = name;
    r.mode = mode;
    r.pass = pass;
    r.informational = informational;
    r.instances = instances;
    if (pass)
        r.detail = detail;
    else
        r.counterexample = detail;
    return r;
}

std::string mode_of(const Context& ctx) { return ctx.symbolic() ? "symbolic" : "specialized " + ctx.describe(); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

LabelledTree random_tree(Rng& rng, int d, int leaves) {
    const long shapes = catalan(leaves - 1).get_si();
    Shape s = shape_unrank(leaves, mpz_class(std::uniform_int_distribution<long>(0, shapes - 1)(rng)));
    std::vector<int> word;
    for (int i = 0; i < leaves; ++i) word.push_back(uniform(rng, 1, 2 * d));
    return LabelledTree::from(s, word);
}

Word random_word(Rng& rng, const std::vector<LabelledTree>& pool, int length) {
    Word w;
    for (int i = 0; i < length; ++i) w.push_back(choose(rng, pool));
    return w;
}

// Non-increasing word: a basis monomial.
Word random_monomial(Rng& rng, const std::vector<LabelledTree>& pool, int lo, int hi) {
    Word w = random_word(rng, pool, uniform(rng, lo, hi));
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

RationalFunction random_coeff(Rng& rng, const Context& ctx) {
    int c = uniform(rng, -3, 3);
    if (c == 0) c = 1;
    Exponents m;
    if (ctx.labels() >= 2 && uniform(rng, 0, 1)) {
        int i = uniform(rng, 1, ctx.labels()), j = uniform(rng, 1, ctx.labels());
        m = Exponents::var(i, j, uniform(rng, 0, 1) ? 1 : -1);
    }
    return ctx.lift(LaurentPolynomial(m, mpq_class(c)));
}

ShadowElement monomial(const ContextPtr& ctx, const Word& w) {
    ShadowElement e(ctx);
    e.add_term(w, RationalFunction(1));
    return e;
}

ShadowElement random_element(Rng& rng, const ContextPtr& ctx, const std::vector<LabelledTree>& pool, int max_terms,
                             int max_len) {
    ShadowElement e(ctx);
    const int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) e.add_term(random_monomial(rng, pool, 0, max_len), random_coeff(rng, *ctx));
    return e;
}

std::size_t size_of(const ShadowElement& e) {
    std::size_t s = 0;
    for (const auto& [w, c] : e.terms()) s += w.size() + 1;
    return s;
}

std::string show(const ShadowElement& e) { return format_element(e); }
std::string show(const Word& w) { return w.empty() ? "1" : format_word(w); }

Failure differ(const ShadowElement& lhs, const ShadowElement& rhs) {
    if (lhs == rhs) return std::nullopt;
    return "difference " + show(lhs - rhs);
}
Failure differ(const EnvelopeElement& lhs, const EnvelopeElement& rhs) {
    if (lhs == rhs) return std::nullopt;
    return "difference " + format_element(lhs - rhs);
}

// Every ordered triple of one-leaf generators, as monomials.
std::vector<std::array<Word, 3>> leaf_triples(int d) {
    std::vector<std::array<Word, 3>> out;
    for (int a = 1; a <= 2 * d; ++a)
        for (int b = 1; b <= 2 * d; ++b)
            for (int c = 1; c <= 2 * d; ++c)
                out.push_back({Word{LabelledTree(a)}, Word{LabelledTree(b)}, Word{LabelledTree(c)}});
    return out;
}

int trials_or(const RunConfig& cfg, int fallback) { return cfg.trials > 0 ? cfg.trials : fallback; }

// ---------------------------------------------------------------- order

SuiteReport suite_order(const RunConfig& cfg) {
    SuiteReport rep{"order", cfg, {}};
    rep.config.trials = trials_or(cfg, 300);
    Rng rng(cfg.seed);
    const int d = cfg.d;

    std::vector<Case> triples;
    for (int t = 0; t < rep.config.trials; ++t) {
        std::array<LabelledTree, 3> g{random_tree(rng, d, uniform(rng, 1, 5)), random_tree(rng, d, uniform(rng, 1, 5)),
                                      random_tree(rng, d, uniform(rng, 1, 5))};
        // same shape as g[0] now and then, so that leaf words get compared
        if (uniform(rng, 0, 2) == 0) {
            std::vector<int> word;
            for (int i = 0; i < g[0].leaves(); ++i) word.push_back(uniform(rng, 1, 2 * d));
            g[1] = LabelledTree::from(g[0].shape(), word);
        }
        std::string text = g[0].to_string() + ", " + g[1].to_string() + ", " + g[2].to_string();
        triples.push_back({text, static_cast<std::size_t>(g[0].leaves() + g[1].leaves() + g[2].leaves()), [g]() -> Failure {
                               for (int a = 0; a < 3; ++a)
                                   for (int b = 0; b < 3; ++b) {
                                       const int ab = compare_ltrees(g[a], g[b]), ba = compare_ltrees(g[b], g[a]);
                                       if (ab != -ba) return "not antisymmetric";
                                       if ((ab == 0) != (g[a] == g[b])) return "tie between distinct trees";
                                       for (int c = 0; c < 3; ++c)
                                           if (ab < 0 && compare_ltrees(g[b], g[c]) < 0 && compare_ltrees(g[a], g[c]) >= 0)
                                               return "not transitive";
                                   }
                               return std::nullopt;
                           }});
    }
    rep.properties.push_back(evaluate("strict total order on labelled trees", "random triples", triples));

    std::vector<Case> pairs;
    for (int t = 0; t < rep.config.trials; ++t) {
        auto a = random_tree(rng, d, uniform(rng, 1, 5));
        auto b = random_tree(rng, d, uniform(rng, 1, 5));
        if (uniform(rng, 0, 1)) b = random_tree(rng, d, a.leaves());
        pairs.push_back({a.to_string() + ", " + b.to_string(), static_cast<std::size_t>(a.leaves() + b.leaves()),
                         [a, b]() -> Failure {
                             int expect = a.leaves() != b.leaves() ? (a.leaves() < b.leaves() ? -1 : 1)
                                                                    : compare_shapes(a.shape(), b.shape());
                             if (expect == 0) {
                                 auto wa = a.word(), wb = b.word();
                                 expect = wa < wb ? -1 : (wa == wb ? 0 : 1);
                             }
                             if (compare_ltrees(a, b) != expect) return "order is not leaves, shape, then word";
                             return std::nullopt;
                         }});
    }
    rep.properties.push_back(evaluate("leaf count, then shape, then leaf word", "random pairs", pairs));

    std::vector<Case> enums;
    for (int n = 1; n <= 4; ++n)
        enums.push_back({"n=" + std::to_string(n), static_cast<std::size_t>(n), [n, d]() -> Failure {
                             auto all = enumerate_ltrees(d, n);
                             mpz_class expect = catalan(n - 1);
                             for (int i = 0; i < n; ++i) expect *= 2 * d;
                             if (mpz_class(static_cast<unsigned long>(all.size())) != expect)
                                 return "count " + std::to_string(all.size()) + " != " + expect.get_str();
                             for (std::size_t i = 1; i < all.size(); ++i)
                                 if (!(all[i - 1] < all[i])) return "not increasing at " + all[i].to_string();
                             return std::nullopt;
                         }});
    rep.properties.push_back(evaluate("enumeration is increasing with (2d)^n catalan(n-1) trees", "exhaustive", enums));

    std::function<bool(const LabelledTree&)> positive = [&](const LabelledTree& g) {
        return g.is_leaf() || (positive(g.left()) && positive(g.right()) && g.left() < g.right());
    };
    std::vector<LabelledTree> filtered;
    for (int n = 1; n <= 4; ++n)
        for (const auto& g : enumerate_ltrees(d, n))
            if (positive(g)) filtered.push_back(g);
    std::sort(filtered.begin(), filtered.end());
    const auto listed = enumerate_positive(d, 4);
    rep.properties.push_back(single("positive trees are leaves and nodes with positive branches, left < right",
                                    "exhaustive, up to 4 leaves", filtered == listed,
                                    std::to_string(listed.size()) + " positive trees", filtered.size()));
    return rep;
}

// ---------------------------------------------------------------- rank

SuiteReport suite_rank(const RunConfig& cfg) {
    SuiteReport rep{"rank", cfg, {}};
    rep.config.trials = trials_or(cfg, 1000);
    Rng rng(cfg.seed);

    std::vector<Case> counts;
    for (int n = 1; n <= 8; ++n)
        counts.push_back({"n=" + std::to_string(n), static_cast<std::size_t>(n), [n]() -> Failure {
                              auto shapes = enumerate_shapes(n);
                              if (mpz_class(static_cast<unsigned long>(shapes.size())) != catalan(n - 1))
                                  return std::to_string(shapes.size()) + " shapes, catalan gives " +
                                         catalan(n - 1).get_str();
                              std::set<Shape> distinct(shapes.begin(), shapes.end());
                              if (distinct.size() != shapes.size()) return "duplicate shapes";
                              return std::nullopt;
                          }});
    rep.properties.push_back(evaluate("catalan(n-1) = #Y_n for n <= 8", "exhaustive", counts));

    const bool small = enumerate_shapes(3).size() == 2 && enumerate_shapes(4).size() == 5;
    rep.properties.push_back(single("#Y_3 = 2 and #Y_4 = 5", "exhaustive", small,
                                    "#Y_3 = " + std::to_string(enumerate_shapes(3).size()) +
                                        ", #Y_4 = " + std::to_string(enumerate_shapes(4).size())));

    std::vector<Case> trips, mono;
    for (int t = 0; t < rep.config.trials; ++t) {
        const int d = uniform(rng, 1, cfg.d);
        auto g = random_tree(rng, d, uniform(rng, 1, 5));
        auto h = random_tree(rng, d, uniform(rng, 1, 5));
        trips.push_back({g.to_string() + " (d=" + std::to_string(d) + ")", static_cast<std::size_t>(g.leaves()),
                         [g, d]() -> Failure {
                             auto nu = rank(g, d);
                             auto back = unrank(nu, d);
                             if (back != g) return "rank " + nu.get_str() + " unranks to " + back.to_string();
                             return std::nullopt;
                         }});
        mono.push_back({g.to_string() + ", " + h.to_string() + " (d=" + std::to_string(d) + ")",
                        static_cast<std::size_t>(g.leaves() + h.leaves()), [g, h, d]() -> Failure {
                            const int c = compare_ltrees(g, h);
                            const int r = cmp(rank(g, d), rank(h, d));
                            if ((c < 0) != (r < 0) || (c == 0) != (r == 0)) return "rank order disagrees with tree order";
                            return std::nullopt;
                        }});
    }
    rep.properties.push_back(evaluate("unrank(rank(g)) = g", "random trees, up to 5 leaves", trips));
    rep.properties.push_back(evaluate("rank is monotone in the tree order", "random pairs", mono));

    std::vector<Case> positions;
    for (int d = 1; d <= cfg.d && d <= 2; ++d)
        positions.push_back({"d=" + std::to_string(d), static_cast<std::size_t>(d), [d]() -> Failure {
                                 mpz_class expect = 1;
                                 for (int n = 1; n <= 3; ++n)
                                     for (const auto& g : enumerate_ltrees(d, n)) {
                                         if (rank(g, d) != expect)
                                             return g.to_string() + " has rank " + rank(g, d).get_str() + ", position " +
                                                    expect.get_str();
                                         ++expect;
                                     }
                                 return std::nullopt;
                             }});
    rep.properties.push_back(evaluate("rank = position in the enumeration", "exhaustive, up to 3 leaves", positions));
    return rep;
}

// ---------------------------------------------------------------- diamond

SuiteReport suite_diamond(const RunConfig& cfg) {
    SuiteReport rep{"diamond", cfg, {}};
    rep.config.trials = trials_or(cfg, 500);
    Rng rng(cfg.seed);
    auto ctx = cfg.context();
    const auto pool = enumerate_positive(cfg.d, cfg.N);
    const std::string mode = mode_of(*ctx);

    std::vector<Case> confl, steps;
    std::vector<Word> words;
    for (const auto& m : leaf_triples(cfg.d)) words.push_back({m[0][0], m[1][0], m[2][0]});
    for (int t = 0; t < rep.config.trials; ++t) words.push_back(random_word(rng, pool, uniform(rng, 2, 5)));
    for (const auto& w : words) {
        const std::uint64_t s = rng();
        confl.push_back({show(w), w.size(), [ctx, w, s]() -> Failure {
                             auto left = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::leftmost());
                             auto right = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::rightmost());
                             auto rnd = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::random(s));
                             if (left != right) return "leftmost - rightmost = " + format_element(left - right);
                             if (left != rnd) return "leftmost - random = " + format_element(left - rnd);
                             return std::nullopt;
                         }});
        steps.push_back({show(w), w.size(), [ctx, w, s]() -> Failure {
                             for (auto st : {RewriteStrategy::leftmost(), RewriteStrategy::rightmost(),
                                             RewriteStrategy::random(s)}) {
                                 RewriteStats stats;
                                 normal_order(ctx, w, RationalFunction(1), st, &stats);
                                 if (stats.steps > stats.bound)
                                     return std::to_string(stats.steps) + " steps > bound " + std::to_string(stats.bound);
                             }
                             return std::nullopt;
                         }});
    }
    rep.properties.push_back(evaluate("normal_order is confluent (leftmost, rightmost, random)",
                                      "one-leaf words of length 3 and random words, " + mode, confl));
    rep.properties.push_back(evaluate("rewriting stops within the step bound", "same words, " + mode, steps));

    std::vector<Case> assoc;
    const int triples = std::max(1, rep.config.trials * 2 / 5);
    auto draws = leaf_triples(cfg.d);
    for (int t = 0; t < triples; ++t)
        draws.push_back({random_monomial(rng, pool, 1, 2), random_monomial(rng, pool, 1, 2),
                         random_monomial(rng, pool, 1, 2)});
    for (const auto& m : draws) {
        assoc.push_back({show(m[0]) + " | " + show(m[1]) + " | " + show(m[2]),
                         m[0].size() + m[1].size() + m[2].size(), [ctx, m]() -> Failure {
                             std::array<EnvelopeElement, 3> x{EnvelopeElement(ctx), EnvelopeElement(ctx),
                                                               EnvelopeElement(ctx)};
                             for (int i = 0; i < 3; ++i) x[i].add_term(m[i], RationalFunction(1));
                             return differ((x[0] * x[1]) * x[2], x[0] * (x[1] * x[2]));
                         }});
    }
    rep.properties.push_back(evaluate("envelope_mul is associative", "one-leaf triples and random, " + mode, assoc));
    return rep;
}

// ---------------------------------------------------------------- star-oracle

SuiteReport suite_star_oracle(const RunConfig& cfg) {
    SuiteReport rep{"star-oracle", cfg, {}};
    rep.config.trials = trials_or(cfg, 100);
    Rng rng(cfg.seed);
    auto ctx = cfg.context();
    const auto pool = enumerate_positive(cfg.d, cfg.N);

    std::vector<std::pair<Word, Word>> pairs;
    std::string how;
    if (cfg.d == 1) {
        std::vector<Word> monos;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            monos.push_back({pool[i]});
            for (std::size_t j = 0; j <= i; ++j) monos.push_back({pool[i], pool[j]});
        }
        for (const auto& a : monos)
            for (const auto& b : monos) pairs.emplace_back(a, b);
        how = "exhaustive over monomials with 1-2 factors";
    } else {
        for (int t = 0; t < rep.config.trials; ++t)
            pairs.emplace_back(random_monomial(rng, pool, 1, 2), random_monomial(rng, pool, 1, 2));
        how = "random monomial pairs";
    }
    std::vector<Case> cases;
    for (const auto& [a, b] : pairs)
        cases.push_back({show(a) + " * " + show(b), a.size() + b.size(), [ctx, a, b]() -> Failure {
                             auto x = monomial(ctx, a), y = monomial(ctx, b);
                             auto closed = star_normal_closed(x, y);
                             auto rewritten = star_normal(x, y);
                             if (closed == rewritten) return std::nullopt;
                             return "closed " + show(closed) + " ; rewriting " + show(rewritten);
                         }});
    rep.properties.push_back(evaluate("closed star formula = rewriting star", how + ", " + mode_of(*ctx), cases));
    return rep;
}

// ---------------------------------------------------------------- q-poisson

ShadowElement twisted(const ShadowElement& e, const ContextPtr& ctx, const Exponents& m) {
    return e.scaled(ctx->lift(m));
}

SuiteReport suite_q_poisson(const RunConfig& cfg) {
    SuiteReport rep{"q-poisson", cfg, {}};
    rep.config.trials = trials_or(cfg, 200);
    Rng rng(cfg.seed);
    auto ctx = cfg.context();
    const auto pool = enumerate_positive(cfg.d, cfg.N);
    const std::string mode = "one-leaf triples and random monomials, " + mode_of(*ctx);

    std::vector<Case> anti, leib, jac, leib_printed, jac_printed;
    auto draws = leaf_triples(cfg.d);
    for (int t = 0; t < rep.config.trials; ++t)
        draws.push_back({random_monomial(rng, pool, 1, 3), random_monomial(rng, pool, 1, 2),
                         random_monomial(rng, pool, 1, 2)});
    for (const auto& [x, y, z] : draws) {
        const std::string text = show(x) + " | " + show(y) + " | " + show(z);
        const std::size_t size = x.size() + y.size() + z.size();
        anti.push_back({show(x) + " | " + show(y), x.size() + y.size(), [=]() -> Failure {
                            auto X = monomial(ctx, x), Y = monomial(ctx, y);
                            return differ(bracket_normal(X, Y), -twisted(bracket_normal(Y, X), ctx, swap_coeff(y, x)));
                        }});
        auto leibniz = [=](const Exponents& eps) -> Failure {
            auto X = monomial(ctx, x), Y = monomial(ctx, y), Z = monomial(ctx, z);
            auto lhs = bracket_normal(X, Y * Z);
            auto rhs = bracket_normal(X, Y) * Z + twisted(Y * bracket_normal(X, Z), ctx, eps);
            return differ(lhs, rhs);
        };
        auto jacobi = [=](const Exponents& eps) -> Failure {
            auto X = monomial(ctx, x), Y = monomial(ctx, y), Z = monomial(ctx, z);
            auto lhs = bracket_normal(X, bracket_normal(Y, Z));
            auto rhs = bracket_normal(bracket_normal(X, Y), Z) + twisted(bracket_normal(Y, bracket_normal(X, Z)), ctx, eps);
            return differ(lhs, rhs);
        };
        leib.push_back({text, size, [=] { return leibniz(swap_coeff(y, x)); }});
        jac.push_back({text, size, [=] { return jacobi(swap_coeff(y, x)); }});
        leib_printed.push_back({text, size, [=] { return leibniz(swap_coeff(x, y)); }});
        jac_printed.push_back({text, size, [=] { return jacobi(swap_coeff(x, y)); }});
    }
    rep.properties.push_back(evaluate("q-antisymmetry <x,y> = -q(y,x) <y,x>", mode, anti));
    rep.properties.push_back(evaluate("q-Leibniz <x,yz> = <x,y>z + q(y,x) y<x,z>", mode, leib));
    rep.properties.push_back(evaluate("q-Jacobi <x,<y,z>> = <<x,y>,z> + q(y,x) <y,<x,z>>", mode, jac));
    rep.properties.push_back(evaluate("q-Leibniz with twist q(x,y)", mode, leib_printed, true));
    rep.properties.push_back(evaluate("q-Jacobi with twist q(x,y)", mode, jac_printed, true));

    std::vector<Case> gens;
    const auto small = enumerate_positive(cfg.d, 2);
    for (const auto& g : small)
        for (const auto& gp : small) {
            if (!(g < gp)) continue;
            gens.push_back({"h[" + g.to_string() + "], h[" + gp.to_string() + "]", 2, [=]() -> Failure {
                                auto b = bracket_normal(generator<AlgebraKind::Shadow>(ctx, g),
                                                        generator<AlgebraKind::Shadow>(ctx, gp));
                                return differ(b, generator<AlgebraKind::Shadow>(ctx, LabelledTree::node(g, gp)));
                            }});
        }
    rep.properties.push_back(evaluate("generator values <h[g],h[g']> = h[[g,g']] on positive trees up to 2 leaves",
                                      "exhaustive, " + mode_of(*ctx), gens));
    return rep;
}

// ---------------------------------------------------------------- weyl

SuiteReport suite_weyl(const RunConfig& cfg) {
    SuiteReport rep{"weyl", cfg, {}};
    rep.config.trials = trials_or(cfg, 200);
    Rng rng(cfg.seed);
    auto ctx = cfg.context();
    const auto pool = enumerate_positive(cfg.d, cfg.N);
    const std::string mode = mode_of(*ctx);
    const Specialization ones;

    std::vector<Case> classical, transform, factorial;
    for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 8; ++t) {
            Word g = random_word(rng, pool, n);
            classical.push_back({show(g), g.size(), [g]() -> Failure {
                                     RationalFunction sum;
                                     for (const auto& s : all_permutations(static_cast<int>(g.size())))
                                         sum += weyl_coeff(g, s) * RationalFunction(LaurentPolynomial(q_perm(g, s)));
                                     if (sum == RationalFunction(1)) return std::nullopt;
                                     return "sum is " + sum.to_string();
                                 }});
            if (t < 3)
                transform.push_back({show(g), g.size(), [g]() -> Failure {
                                         const auto perms = all_permutations(static_cast<int>(g.size()));
                                         for (const auto& s : perms)
                                             for (const auto& tau : perms) {
                                                 auto lhs = weyl_coeff(tau.apply(g), tau.inverse() * s);
                                                 auto rhs = RationalFunction(LaurentPolynomial(q_perm(g, tau))) *
                                                            weyl_coeff(g, s);
                                                 if (lhs != rhs) return "s=" + s.to_string() + " t=" + tau.to_string();
                                             }
                                         return std::nullopt;
                                     }});
        }
    for (int n = 1; n <= 5; ++n)
        for (int t = 0; t < 3; ++t) {
            Word g = random_word(rng, pool, n);
            factorial.push_back({show(g), g.size(), [g, ones]() -> Failure {
                                     mpq_class expect(1);
                                     for (std::size_t k = 2; k <= g.size(); ++k) expect /= static_cast<unsigned long>(k);
                                     for (const auto& s : all_permutations(static_cast<int>(g.size()))) {
                                         auto v = weyl_coeff(g, s).evaluate(ones);
                                         if (v != expect) return "C" + s.to_string() + " = " + v.get_str();
                                     }
                                     return std::nullopt;
                                 }});
        }
    rep.properties.push_back(evaluate("sum_s C(s) q(s) = 1", "symbolic, n <= 4", classical));
    rep.properties.push_back(evaluate("C_{G_t}(t^-1 s) = q(G,t) C_G(s)", "symbolic, n <= 4, all s and t", transform));
    rep.properties.push_back(evaluate("all-ones: C(s) = 1/n!", "all-ones, n <= 5", factorial));

    std::vector<Case> round, leading;
    for (int t = 0; t < rep.config.trials; ++t) {
        auto f = random_element(rng, ctx, pool, 2, 3);
        round.push_back({show(f), size_of(f), [f]() -> Failure { return differ(weyl_W_inverse(weyl_W(f)), f); }});
        Word w = random_monomial(rng, pool, 1, 3);
        leading.push_back({show(w), w.size(), [ctx, w]() -> Failure {
                               auto rest = weyl_W(monomial(ctx, w)) - normal_Q(monomial(ctx, w));
                               auto range = rest.degree_range();
                               if (range && range->first <= degree(w))
                                   return "term of degree " + std::to_string(range->first) + " in " + format_element(rest);
                               return std::nullopt;
                           }});
    }
    rep.properties.push_back(evaluate("weyl_W_inverse(weyl_W(f)) = f", mode, round));
    rep.properties.push_back(evaluate("weyl_W(w) - normal_Q(w) has degree > deg(w)", mode, leading));

    std::vector<Case> assoc, recursive;
    const int triples = std::max(20, rep.config.trials / 10);
    auto draws = leaf_triples(cfg.d);
    for (int t = 0; t < triples; ++t)
        draws.push_back({random_monomial(rng, pool, 1, 2), random_monomial(rng, pool, 1, 2),
                         random_monomial(rng, pool, 1, 2)});
    for (const auto& m : draws) {
        assoc.push_back({show(m[0]) + " | " + show(m[1]) + " | " + show(m[2]), m[0].size() + m[1].size() + m[2].size(),
                         [ctx, m]() -> Failure {
                             auto a = monomial(ctx, m[0]), b = monomial(ctx, m[1]), c = monomial(ctx, m[2]);
                             return differ(star_weyl(star_weyl(a, b), c), star_weyl(a, star_weyl(b, c)));
                         }});
    }
    const int pairs = std::max(100, rep.config.trials / 2);
    for (int t = 0; t < pairs; ++t) {
        auto a = random_element(rng, ctx, pool, 2, 2), b = random_element(rng, ctx, pool, 2, 2);
        recursive.push_back({show(a) + " | " + show(b), size_of(a) + size_of(b),
                             [a, b]() -> Failure { return differ(star_weyl_recursive(a, b), star_weyl(a, b)); }});
    }
    rep.properties.push_back(evaluate("star_weyl is associative", "one-leaf triples and random, " + mode, assoc));
    rep.properties.push_back(evaluate("recursive product formula = direct inversion", mode, recursive));

    auto ones_ctx = Context::make(cfg.d, cfg.N, ones);
    std::vector<Case> semi;
    for (const auto& g : pool)
        for (const auto& gp : pool) {
            if (!(gp < g)) continue;
            semi.push_back({"h[" + g.to_string() + "], h[" + gp.to_string() + "]",
                            static_cast<std::size_t>(g.leaves() + gp.leaves()), [ones_ctx, g, gp]() -> Failure {
                                auto b = bracket_weyl(generator<AlgebraKind::Shadow>(ones_ctx, g),
                                                      generator<AlgebraKind::Shadow>(ones_ctx, gp));
                                auto expect = generator<AlgebraKind::Shadow>(ones_ctx, LabelledTree::node(gp, g))
                                                  .scaled(RationalFunction(mpq_class(-1, 2)));
                                return differ(b, expect);
                            }});
        }
    rep.properties.push_back(evaluate("all-ones: <h[g],h[g']> = -1/2 h[[g',g]] for g' < g", "all-ones, exhaustive", semi));
    return rep;
}

// ---------------------------------------------------------------- cocycle

SuiteReport suite_cocycle(const RunConfig& cfg) {
    SuiteReport rep{"cocycle", cfg, {}};
    rep.config.trials = trials_or(cfg, 200);
    Rng rng(cfg.seed);
    auto ctx = cfg.context();
    const auto pool = enumerate_positive(cfg.d, cfg.N);
    const std::string mode = "one-leaf triples and random monomials, " + mode_of(*ctx);

    std::vector<Case> cocycle, anti, leib, jac;
    auto draws = leaf_triples(cfg.d);
    for (int t = 0; t < rep.config.trials; ++t)
        draws.push_back({random_monomial(rng, pool, 1, 2), random_monomial(rng, pool, 1, 2),
                         random_monomial(rng, pool, 1, 2)});
    for (std::size_t t = 0; t < draws.size(); ++t) {
        const auto& [x, y, z] = draws[t];
        const std::string text = show(x) + " | " + show(y) + " | " + show(z);
        const std::size_t size = x.size() + y.size() + z.size();
        cocycle.push_back({text, size, [=]() -> Failure {
                               auto u = monomial(ctx, x), v = monomial(ctx, y), w = monomial(ctx, z);
                               auto lhs = u * bracket_weyl(v, w) - bracket_weyl(u * v, w) + bracket_weyl(u, v * w) -
                                          bracket_weyl(u, v) * w;
                               if (lhs.is_zero()) return std::nullopt;
                               return "sum " + show(lhs);
                           }});
        anti.push_back({show(x) + " | " + show(y), x.size() + y.size(), [=]() -> Failure {
                            auto X = monomial(ctx, x), Y = monomial(ctx, y);
                            return differ(bracket_weyl_antisym(X, Y),
                                          -twisted(bracket_weyl_antisym(Y, X), ctx, swap_coeff(y, x)));
                        }});
        if (t % 4 == 0) {
            leib.push_back({text, size, [=]() -> Failure {
                                auto X = monomial(ctx, x), Y = monomial(ctx, y), Z = monomial(ctx, z);
                                auto lhs = bracket_weyl_antisym(X, Y * Z);
                                auto rhs = bracket_weyl_antisym(X, Y) * Z +
                                           twisted(Y * bracket_weyl_antisym(X, Z), ctx, swap_coeff(y, x));
                                return differ(lhs, rhs);
                            }});
            jac.push_back({text, size, [=]() -> Failure {
                               auto X = monomial(ctx, x), Y = monomial(ctx, y), Z = monomial(ctx, z);
                               auto lhs = bracket_weyl_antisym(X, bracket_weyl_antisym(Y, Z));
                               auto rhs = bracket_weyl_antisym(bracket_weyl_antisym(X, Y), Z) +
                                          twisted(bracket_weyl_antisym(Y, bracket_weyl_antisym(X, Z)), ctx,
                                                  swap_coeff(y, x));
                               return differ(lhs, rhs);
                           }});
        }
    }
    rep.properties.push_back(evaluate("2-cocycle u<v,w> - <uv,w> + <u,vw> - <u,v>w = 0", mode, cocycle));
    rep.properties.push_back(evaluate("antisymmetrized bracket: q-antisymmetry", mode, anti));
    rep.properties.push_back(evaluate("antisymmetrized bracket: q-Leibniz", mode, leib, true));
    rep.properties.push_back(evaluate("antisymmetrized bracket: q-Jacobi", mode, jac, true));
    return rep;
}

// ---------------------------------------------------------------- coequivariance

SuiteReport suite_coequivariance(const RunConfig& cfg) {
    SuiteReport rep{"coequivariance", cfg, {}};
    rep.config.trials = trials_or(cfg, 20);
    auto to_report = [](const PropertyResult& r) {
        PropertyReport p;
        p.name = r.property + " (n=" + std::to_string(r.n) + ")";
        p.pass = r.pass;
        p.mode = r.mode;
        p.counterexample = r.counterexample;
        p.detail = r.instance;
        p.instances = static_cast<std::uint64_t>(std::stoul(r.instance));
        return p;
    };
    const int n3 = std::max(10, rep.config.trials / 2);
    auto results = parallel_map(2, [&](std::size_t i) {
        return i == 0 ? verify_Ln_transform(cfg.d, cfg.N, 2, rep.config.trials, cfg.seed)
                      : verify_Ln_transform(cfg.d, cfg.N, 3, n3, cfg.seed + 1, 3);
    });
    for (const auto& batch : results)
        for (const auto& r : batch) rep.properties.push_back(to_report(r));
    return rep;
}

// ---------------------------------------------------------------- distortion

Specialization random_specialization(Rng& rng, int d) {
    Specialization s;
    for (int j = 2; j <= 2 * d; ++j)
        for (int i = 1; i < j; ++i) {
            mpq_class x(uniform(rng, 1, 97), uniform(rng, 1, 97));
            x.canonicalize();
            s.values[qvar_index(i, j)] = x;
        }
    return s;
}

SuiteReport suite_distortion(const RunConfig& cfg) {
    if (cfg.N < 3) throw ConfigError("distortion suite needs N >= 3");
    SuiteReport rep{"distortion", cfg, {}};
    rep.config.trials = trials_or(cfg, 3);
    Rng rng(cfg.seed);
    auto ctx = Context::make(cfg.d, cfg.N);
    auto w = distortion_witness(ctx);
    rep.properties.push_back(single("W(h[g] u) != h^[g] W(u) for a two-leaf g", "symbolic search", w.found,
                                    w.found ? w.detail : "no witness found"));
    if (w.found) {
        std::vector<Case> specs;
        for (int k = 0; k < rep.config.trials; ++k) {
            auto sctx = Context::make(cfg.d, cfg.N, random_specialization(rng, cfg.d));
            specs.push_back({sctx->describe(), static_cast<std::size_t>(k), [sctx, w]() -> Failure {
                                 ShadowElement u(sctx);
                                 u.add_term(w.u, RationalFunction(1));
                                 auto hg = generator<AlgebraKind::Shadow>(sctx, w.generator);
                                 auto lhs = weyl_W(hg * u);
                                 auto rhs = generator<AlgebraKind::Envelope>(sctx, w.generator) * weyl_W(u);
                                 if (lhs != rhs) return std::nullopt;
                                 return "the two sides agree here";
                             }});
        }
        rep.properties.push_back(evaluate("the witness persists under random specializations",
                                          "random positive rationals", specs));
    }
    auto lam = lambda_check(ctx);
    std::string ratios;
    for (const auto& r : lam.ratios) ratios += (ratios.empty() ? "" : " ; ") + r;
    rep.properties.push_back(single("no single lambda with <f,g>_- = lambda <f,g> on two test pairs", "symbolic",
                                    !lam.exists, ratios, lam.ratios.size()));
    return rep;
}

// ---------------------------------------------------------------- projector

std::vector<Word> multisets(const std::vector<LabelledTree>& pool, int max_size) {
    std::vector<Word> out{{}};
    std::function<void(Word&, std::size_t)> grow = [&](Word& w, std::size_t from) {
        if (static_cast<int>(w.size()) == max_size) return;
        for (std::size_t i = from; i < pool.size(); ++i) {
            w.push_back(pool[i]);
            out.push_back(w);
            grow(w, i);
            w.pop_back();
        }
    };
    Word w;
    grow(w, 0);
    return out;
}

SuiteReport suite_projector(const RunConfig& cfg) {
    RunConfig c2 = cfg;
    c2.N = 2;
    SuiteReport rep{"projector", c2, {}};
    rep.config.trials = trials_or(cfg, 50);
    Rng rng(cfg.seed);
    auto ctx = c2.context();
    const std::string mode = mode_of(*ctx);
    auto P = ProjectorSpec::builtin_n2(ctx);
    const auto pool = enumerate_positive(cfg.d, 2);
    std::vector<LabelledTree> pairs, leaves;
    for (const auto& g : pool) (g.is_leaf() ? leaves : pairs).push_back(g);
    std::sort(pairs.begin(), pairs.end(), std::greater<>());
    std::sort(leaves.begin(), leaves.end(), std::greater<>());

    std::vector<Case> idem;
    for (const auto& a : multisets(pairs, 3))
        for (const auto& b : multisets(leaves, 2)) {
            Word w = a;
            w.insert(w.end(), b.begin(), b.end());
            idem.push_back({show(w), w.size(), [ctx, P, w]() -> Failure {
                                auto once = P.apply_word(ctx, w);
                                return differ(apply_projector(P, once), once);
                            }});
        }
    rep.properties.push_back(evaluate("built-in N=2 projector is idempotent",
                                      "exhaustive, <= 3 two-leaf and <= 2 one-leaf factors, " + mode, idem));

    std::vector<Case> ident, degree0, trees;
    for (int t = 0; t < rep.config.trials; ++t) {
        auto a = random_element(rng, ctx, pool, 2, 2), b = random_element(rng, ctx, pool, 2, 2);
        ident.push_back({show(a) + " | " + show(b), size_of(a) + size_of(b), [a, b]() -> Failure {
                             return differ(star_P(ProjectorSpec::identity(), a, b), star_weyl(a, b));
                         }});
        auto x = random_element(rng, ctx, leaves, 2, 2), y = random_element(rng, ctx, leaves, 2, 2);
        degree0.push_back({show(x) + " | " + show(y), size_of(x) + size_of(y), [P, x, y]() -> Failure {
                               return differ(star_P(P, x, y), apply_projector(P, star_weyl(x, y)));
                           }});
        auto z = random_element(rng, ctx, pool, 1, 1);
        trees.push_back({show(a) + " | " + show(x) + " | " + show(z), size_of(a) + size_of(x) + size_of(z),
                         [P, a, x, z]() -> Failure {
                             const Shape two = Shape::node(Shape::leaf(), Shape::leaf());
                             const Shape left = Shape::node(two, Shape::leaf());
                             const Shape right = Shape::node(Shape::leaf(), two);
                             if (auto f = differ(tree_bracket(left, P, {a, x, z}), bracket_P(P, bracket_P(P, a, x), z)))
                                 return "((*,*),*) " + *f;
                             if (auto f = differ(tree_bracket(right, P, {a, x, z}), bracket_P(P, a, bracket_P(P, x, z))))
                                 return "(*,(*,*)) " + *f;
                             return std::nullopt;
                         }});
    }
    rep.properties.push_back(evaluate("identity projector: star_P = star_weyl", mode, ident));
    rep.properties.push_back(evaluate("built-in projector on one-leaf inputs: star_P = P(star_weyl)", mode, degree0));
    rep.properties.push_back(evaluate("tree_bracket nests bracket_P along the shape", mode, trees));

    // a nonzero associativity defect, smallest first
    std::string witness;
    std::uint64_t tried = 0;
    for (std::size_t i = 0; i < pool.size() && witness.empty(); ++i)
        for (std::size_t j = 0; j < pool.size() && witness.empty(); ++j)
            for (std::size_t k = 0; k < pool.size() && witness.empty(); ++k) {
                ++tried;
                auto a = generator<AlgebraKind::Shadow>(ctx, pool[i]), b = generator<AlgebraKind::Shadow>(ctx, pool[j]),
                     c = generator<AlgebraKind::Shadow>(ctx, pool[k]);
                auto defect = star_P(P, star_P(P, a, b), c) - star_P(P, a, star_P(P, b, c));
                if (!defect.is_zero())
                    witness = show(a) + " | " + show(b) + " | " + show(c) + " : defect " + show(defect);
            }
    auto defect = single("star_P associativity defect is nonzero somewhere", "generator triples", !witness.empty(),
                         witness.empty() ? "associative on all generator triples" : witness, tried, true);
    if (!witness.empty()) defect.detail = witness;
    rep.properties.push_back(defect);
    return rep;
}

// ---------------------------------------------------------------- qybe

SuiteReport suite_qybe(const RunConfig& cfg) {
    RunConfig c2 = cfg;
    c2.N = 2;
    SuiteReport rep{"qybe", c2, {}};
    rep.config.trials = trials_or(cfg, 20);
    Rng rng(cfg.seed);
    auto ctx = c2.context();
    const std::string mode = mode_of(*ctx);
    const auto pool = enumerate_positive(cfg.d, 2);
    std::vector<ShadowElement> probes{ShadowElement::unit(ctx)};
    for (const auto& g : pool) probes.push_back(generator<AlgebraKind::Shadow>(ctx, g));

    std::vector<Case> zero;
    for (const auto& g : pool)
        for (const auto& gp : pool)
            zero.push_back({g.to_string() + ", " + gp.to_string(), 2, [ctx, g, gp]() -> Failure {
                                auto rep = qybe_residual(ctx, TwistSpec{}, g, gp, {ShadowElement::unit(ctx)});
                                auto expect = -generator<AlgebraKind::Shadow>(ctx, LabelledTree::node(g, gp));
                                return differ(rep.residuals[0], expect);
                            }});
    rep.properties.push_back(evaluate("R = 0: residual on the unit is -h[[g,g']]", mode, zero));

    auto from_star = TwistSpec::from_normal_star(ctx);
    std::vector<Case> linear;
    for (int t = 0; t < rep.config.trials; ++t) {
        const auto& g = choose(rng, pool);
        const auto& gp = choose(rng, pool);
        auto p = random_element(rng, ctx, pool, 2, 2), q = random_element(rng, ctx, pool, 2, 2);
        auto a = random_coeff(rng, *ctx);
        linear.push_back({g.to_string() + ", " + gp.to_string() + " on " + show(p) + " | " + show(q),
                          size_of(p) + size_of(q), [=]() -> Failure {
                              auto whole = qybe_residual(ctx, from_star, g, gp, {p.scaled(a) + q}).residuals[0];
                              auto parts = qybe_residual(ctx, from_star, g, gp, {p, q});
                              return differ(whole, parts.residuals[0].scaled(a) + parts.residuals[1]);
                          }});
    }
    rep.properties.push_back(evaluate("residual is linear in the probe", mode, linear));

    auto residual_cases = [&](const ContextPtr& c, const TwistSpec& r) {
        std::vector<ShadowElement> pr{ShadowElement::unit(c)};
        for (const auto& g : pool) pr.push_back(generator<AlgebraKind::Shadow>(c, g));
        std::vector<Case> cases;
        for (const auto& g : pool)
            for (const auto& gp : pool)
                for (const auto& p : pr)
                    cases.push_back({g.to_string() + ", " + gp.to_string() + " on " + show(p), size_of(p) + 2,
                                     [c, r, g, gp, p]() -> Failure {
                                         auto res = qybe_residual(c, r, g, gp, {p}).residuals[0];
                                         if (res.is_zero()) return std::nullopt;
                                         return "residual " + show(res);
                                     }});
        return cases;
    };
    rep.properties.push_back(evaluate("twist read off the normal star product: residual vanishes on unit and generators",
                                      mode, residual_cases(ctx, from_star)));
    auto ones = Context::make(cfg.d, 2, Specialization{});
    rep.properties.push_back(evaluate("same at q = 1", "all-ones", residual_cases(ones, TwistSpec::from_normal_star(ones)),
                                      true));
    return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
    if (cfg.d < 1 || cfg.N < 1) throw ConfigError("d and N must be at least 1");
    if (cfg.trials < 0) throw ConfigError("trials must be non-negative");
    static const std::map<std::string, std::function<SuiteReport(const RunConfig&)>> table{
        {"order", suite_order},
        {"rank", suite_rank},
        {"diamond", suite_diamond},
        {"star-oracle", suite_star_oracle},
        {"q-poisson", suite_q_poisson},
        {"weyl", suite_weyl},
        {"cocycle", suite_cocycle},
        {"coequivariance", suite_coequivariance},
        {"distortion", suite_distortion},
        {"projector", suite_projector},
        {"qybe", suite_qybe},
    };
    auto it = table.find(suite);
    if (it == table.end()) throw ConfigError("unknown suite '" + suite + "'");
    return it->second(cfg);
}

}  // namespace epoche
