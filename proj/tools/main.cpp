// epoche command line front end.
//
// Exit codes: 0 ok, 1 a verified property failed, 2 parse error, 3 config error.

#include "epoche/distortions.hpp"
#include "epoche/errors.hpp"
#include "epoche/io.hpp"
#include "epoche/quantize.hpp"
#include "epoche/trees.hpp"
#include "epoche/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

using namespace epoche;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kParseError = 2;
constexpr int kConfigError = 3;

struct Options {
    RunConfig run;
    std::string format = "text";
    std::string config_path;
    std::string algebra = "envelope";
    std::string kind;
    bool dot = false;
    bool annotate_jump = false;
    bool positive = false;
    std::string perm;
    std::vector<std::string> args;
};

// Fills the fields the command line left at their defaults from the config file.
void apply_config(Options& o, const CLI::App& app) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("cannot open config file " + o.config_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "d") {
                if (!given("--d")) o.run.d = value.get<int>();
            } else if (key == "N") {
                if (!given("--N")) o.run.N = value.get<int>();
            } else if (key == "q") {
                if (!given("--q")) o.run.q = value.get<std::string>();
            } else if (key == "seed") {
                if (!given("--seed")) o.run.seed = value.get<std::uint64_t>();
            } else if (key == "trials") {
                if (!given("--trials")) o.run.trials = value.get<int>();
            } else if (key == "format") {
                if (!given("--format")) o.format = value.get<std::string>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
}

void validate(const Options& o) {
    if (o.run.d < 1) throw ConfigError("d must be at least 1");
    if (o.run.N < 1) throw ConfigError("N must be at least 1");
    if (o.run.trials < 0) throw ConfigError("trials must be non-negative");
    if (o.format != "text" && o.format != "json") throw ConfigError("format must be text or json");
    parse_specialization(o.run.q);
}

// Parses an element, warning about factors that vanish or fall outside the truncation.
template <AlgebraKind K>
Element<K> read_element(const ContextPtr& ctx, const std::string& text) {
    for (const auto& t : parse_terms(text))
        for (const auto& g : t.word) {
            if (g.max_label() > ctx->labels())
                throw ParseError("leaf label " + std::to_string(g.max_label()) + " in " + format_word({g}) +
                                     " is out of range 1.." + std::to_string(ctx->labels()),
                                 0);
            if (g.leaves() > ctx->N())
                std::cerr << "warning: " << format_word({g}) << " has " << g.leaves() << " leaves > N = " << ctx->N()
                          << ", term dropped\n";
            else if (!canonicalize(*ctx, g))
                std::cerr << "warning: " << format_word({g}) << " vanishes\n";
        }
    if constexpr (K == AlgebraKind::Shadow)
        return parse_shadow(ctx, text);
    else
        return parse_envelope(ctx, text);
}

LabelledTree read_tree(const ContextPtr& ctx, const std::string& text) {
    auto g = parse_tree(text);
    if (g.max_label() > ctx->labels())
        throw ParseError("leaf label " + std::to_string(g.max_label()) + " is out of range 1.." +
                             std::to_string(ctx->labels()),
                         0);
    return g;
}

json header(const std::string& command, const Options& o) {
    return {{"command", command}, {"d", o.run.d}, {"N", o.run.N}, {"q", o.run.q}};
}

template <AlgebraKind K>
int emit(const std::string& command, const Options& o, const Element<K>& e) {
    if (o.format == "json") {
        auto j = header(command, o);
        j["algebra"] = K == AlgebraKind::Shadow ? "shadow" : "envelope";
        j["result"] = element_to_json(e);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_element(e) << "\n";
    }
    return kOk;
}

// Splits a shadow element into its degree-jump components relative to the inputs.
std::map<int, ShadowElement> by_jump(const ShadowElement& a, const ShadowElement& b,
                                     ShadowElement (*product)(const ShadowElement&, const ShadowElement&)) {
    const auto& ctx = a.context();
    std::map<int, ShadowElement> out;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            auto p = product(shadow_word(ctx, u, cu), shadow_word(ctx, v, cv));
            const int base = degree(u) + degree(v);
            for (const auto& [w, c] : p.terms()) {
                auto it = out.try_emplace(degree(w) - base, ctx).first;
                it->second += shadow_word(ctx, w, c);
            }
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

ShadowElement star_normal_default(const ShadowElement& a, const ShadowElement& b) { return star_normal(a, b); }

using Product = ShadowElement (*)(const ShadowElement&, const ShadowElement&);

Product star_kind(const std::string& kind) {
    if (kind.empty() || kind == "normal") return star_normal_default;
    if (kind == "normal-closed") return star_normal_closed;
    if (kind == "weyl") return star_weyl;
    if (kind == "weyl-recursive") return star_weyl_recursive;
    if (kind == "shadow") return shadow_mul;
    throw ConfigError("unknown star kind '" + kind + "' (normal, normal-closed, weyl, weyl-recursive, shadow)");
}

Product bracket_kind(const std::string& kind) {
    if (kind.empty() || kind == "normal") return bracket_normal;
    if (kind == "weyl") return bracket_weyl;
    if (kind == "weyl-antisym") return bracket_weyl_antisym;
    throw ConfigError("unknown bracket kind '" + kind + "' (normal, weyl, weyl-antisym)");
}

void need_args(const Options& o, std::size_t n, const std::string& usage) {
    if (o.args.size() != n) throw ConfigError("expected " + usage);
}

int cmd_norm(const Options& o) {
    need_args(o, 1, "one element");
    auto ctx = o.run.context();
    if (o.algebra == "shadow") return emit("norm", o, read_element<AlgebraKind::Shadow>(ctx, o.args[0]));
    if (o.algebra == "envelope") return emit("norm", o, read_element<AlgebraKind::Envelope>(ctx, o.args[0]));
    throw ConfigError("algebra must be shadow or envelope");
}

int cmd_mul(const Options& o) {
    need_args(o, 2, "two elements");
    auto ctx = o.run.context();
    if (o.algebra == "shadow")
        return emit("mul", o,
                    read_element<AlgebraKind::Shadow>(ctx, o.args[0]) * read_element<AlgebraKind::Shadow>(ctx, o.args[1]));
    if (o.algebra == "envelope")
        return emit("mul", o,
                    read_element<AlgebraKind::Envelope>(ctx, o.args[0]) *
                        read_element<AlgebraKind::Envelope>(ctx, o.args[1]));
    throw ConfigError("algebra must be shadow or envelope");
}

int cmd_star(const Options& o) {
    need_args(o, 2, "two elements");
    auto ctx = o.run.context();
    const Product f = star_kind(o.kind);
    auto a = read_element<AlgebraKind::Shadow>(ctx, o.args[0]);
    auto b = read_element<AlgebraKind::Shadow>(ctx, o.args[1]);
    if (!o.annotate_jump) return emit("star", o, f(a, b));
    auto parts = by_jump(a, b, f);
    if (o.format == "json") {
        auto j = header("star", o);
        j["algebra"] = "shadow";
        j["components"] = json::array();
        for (const auto& [k, e] : parts) j["components"].push_back({{"jump", k}, {"terms", element_to_json(e)}});
        std::cout << j.dump(2) << "\n";
    } else {
        if (parts.empty()) std::cout << "0\n";
        for (const auto& [k, e] : parts) std::cout << "eps^" << k << ": " << format_element(e) << "\n";
    }
    return kOk;
}

int cmd_bracket(const Options& o) {
    need_args(o, 2, "two elements");
    auto ctx = o.run.context();
    return emit("bracket", o,
                bracket_kind(o.kind)(read_element<AlgebraKind::Shadow>(ctx, o.args[0]),
                                     read_element<AlgebraKind::Shadow>(ctx, o.args[1])));
}

int cmd_quantize(const Options& o) {
    need_args(o, 1, "one element");
    auto ctx = o.run.context();
    auto a = read_element<AlgebraKind::Shadow>(ctx, o.args[0]);
    if (o.kind.empty() || o.kind == "normal") return emit("quantize", o, normal_Q(a));
    if (o.kind == "weyl") return emit("quantize", o, weyl_W(a));
    throw ConfigError("quantize kind must be normal or weyl");
}

int cmd_dequantize(const Options& o) {
    need_args(o, 1, "one element");
    auto ctx = o.run.context();
    auto x = read_element<AlgebraKind::Envelope>(ctx, o.args[0]);
    if (o.kind.empty() || o.kind == "normal") return emit("dequantize", o, dequantize_normal(x));
    if (o.kind == "weyl") return emit("dequantize", o, weyl_W_inverse(x));
    throw ConfigError("dequantize kind must be normal or weyl");
}

int cmd_rank(const Options& o) {
    need_args(o, 1, "one tree");
    auto ctx = o.run.context();
    auto g = read_tree(ctx, o.args[0]);
    const auto nu = rank(g, o.run.d);
    if (o.format == "json") {
        auto j = header("rank", o);
        j["tree"] = g.to_string();
        j["rank"] = nu.get_str();
        if (o.dot) j["dot"] = to_dot(g);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << nu.get_str() << "\n";
        if (o.dot) std::cout << to_dot(g);
    }
    return kOk;
}

int cmd_unrank(const Options& o) {
    need_args(o, 1, "one rank");
    mpz_class nu;
    if (nu.set_str(o.args[0], 10) != 0 || nu < 1) throw ParseError("rank must be a positive integer", 0);
    auto g = unrank(nu, o.run.d);
    if (o.format == "json") {
        auto j = header("unrank", o);
        j["rank"] = nu.get_str();
        j["tree"] = g.to_string();
        if (o.dot) j["dot"] = to_dot(g);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << g.to_string() << "\n";
        if (o.dot) std::cout << to_dot(g);
    }
    return kOk;
}

int cmd_enum_trees(const Options& o) {
    need_args(o, 1, "a leaf count");
    int n = 0;
    try {
        n = std::stoi(o.args[0]);
    } catch (const std::exception&) {
        throw ParseError("leaf count must be an integer", 0);
    }
    if (n < 1) throw ConfigError("leaf count must be at least 1");
    std::vector<LabelledTree> trees;
    if (o.positive) {
        for (auto& g : enumerate_positive(o.run.d, n))
            if (g.leaves() == n) trees.push_back(std::move(g));
    } else {
        trees = enumerate_ltrees(o.run.d, n);
    }
    if (o.format == "json") {
        auto j = header("enum-trees", o);
        j["leaves"] = n;
        j["trees"] = json::array();
        for (const auto& g : trees) j["trees"].push_back({{"tree", g.to_string()}, {"rank", rank(g, o.run.d).get_str()}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& g : trees) std::cout << rank(g, o.run.d).get_str() << "\t" << g.to_string() << "\n";
    }
    return kOk;
}

Permutation read_perm(const std::string& text, int n) {
    std::vector<int> images;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            try {
                images.push_back(std::stoi(item) - 1);
            } catch (const std::exception&) {
                throw ParseError("bad permutation '" + text + "'", 0);
            }
            item.clear();
        } else if (c != '(' && c != ')' && c != ' ') {
            item += c;
        }
    }
    if (static_cast<int>(images.size()) != n) throw ConfigError("permutation length does not match the tree count");
    try {
        return Permutation(std::move(images));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
}

int cmd_coeff(const Options& o) {
    if (o.args.empty()) throw ConfigError("expected at least one tree");
    auto ctx = o.run.context();
    std::vector<LabelledTree> trees;
    for (const auto& a : o.args) trees.push_back(read_tree(ctx, a));
    const int n = static_cast<int>(trees.size());
    std::vector<Permutation> perms;
    if (o.perm.empty())
        perms = all_permutations(n);
    else
        perms.push_back(read_perm(o.perm, n));
    const RationalFunction z = ctx->lift(partition_Z(trees));
    if (o.format == "json") {
        auto j = header("coeff", o);
        j["Z"] = format_coefficient(z);
        j["permutations"] = json::array();
        for (const auto& s : perms)
            j["permutations"].push_back({{"sigma", s.to_string()},
                                         {"q_perm", format_coefficient(ctx->lift(q_perm(trees, s)))},
                                         {"weyl", format_coefficient(ctx->lift(weyl_coeff(trees, s)))}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Z = " << format_coefficient(z) << "\n";
        for (const auto& s : perms)
            std::cout << s.to_string() << "\tq_perm = " << format_coefficient(ctx->lift(q_perm(trees, s)))
                      << "\tweyl = " << format_coefficient(ctx->lift(weyl_coeff(trees, s))) << "\n";
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    need_args(o, 1, "a suite name");
    auto report = run_suite(o.args[0], o.run);
    if (o.format == "json")
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.to_text();
    return report.pass() ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epoche: exact computations in the q-deformed bracketing algebra"};
    app.require_subcommand(1);
    app.allow_extras();
    Options o;
    app.add_option("--d", o.run.d, "number of variable pairs (labels 1..2d)");
    app.add_option("--N", o.run.N, "truncation: trees with more than N leaves vanish");
    app.add_option("--q", o.run.q, "symbolic, all-ones, or values such as '1,2=3/2;1,3=2'");
    app.add_option("--seed", o.run.seed, "random seed for verify");
    app.add_option("--trials", o.run.trials, "random instances per property (0: suite default)");
    app.add_option("--format", o.format, "text or json");
    app.add_option("--config", o.config_path, "JSON file with d, N, q, seed, trials, format");

    std::string selected;
    auto sub = [&](const char* name, const char* help, const char* args_help) {
        auto* s = app.add_subcommand(name, help);
        // positionals are taken raw: an option vector would split "[1,2]" into a list
        s->allow_extras();
        s->footer(std::string("Arguments: ") + args_help);
        s->callback([&selected, name] { selected = name; });
        s->fallthrough();
        return s;
    };
    auto* norm = sub("norm", "normal form of an element", "element");
    norm->add_option("--algebra", o.algebra, "shadow or envelope (default envelope)");
    auto* mul = sub("mul", "product of two elements", "two elements");
    mul->add_option("--algebra", o.algebra, "shadow or envelope (default envelope)");
    auto* star = sub("star", "star product of two shadow elements", "two elements");
    star->add_option("--kind", o.kind, "normal, normal-closed, weyl, weyl-recursive or shadow");
    star->add_flag("--annotate-jump", o.annotate_jump, "group terms by degree jump");
    auto* quant = sub("quantize", "shadow element to the envelope", "element");
    quant->add_option("--kind", o.kind, "normal or weyl");
    auto* dequant = sub("dequantize", "envelope element to the shadow", "element");
    dequant->add_option("--kind", o.kind, "normal or weyl");
    auto* br = sub("bracket", "q-Poisson bracket of two shadow elements", "two elements");
    br->add_option("--kind", o.kind, "normal, weyl or weyl-antisym");
    sub("rank", "rank of a labelled tree", "tree")->add_flag("--dot", o.dot, "also print the tree in DOT format");
    sub("unrank", "labelled tree with a given rank", "rank")->add_flag("--dot", o.dot, "also print DOT");
    sub("enum-trees", "labelled trees with n leaves in order", "n")
        ->add_flag("--positive", o.positive, "only positive trees");
    sub("coeff", "q_perm and Weyl coefficients for a tuple of trees", "trees")
        ->add_option("--perm", o.perm, "one permutation, 1-based, e.g. 2,1,3");
    sub("verify", "run a verification suite", "suite name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    for (auto& a : app.remaining()) {
        if (a.size() > 1 && a[0] == '-' && a[1] == '-') {
            std::cerr << "unknown option " << a << "\n";
            return kConfigError;
        }
        o.args.push_back(std::move(a));
    }
    try {
        apply_config(o, app);
        validate(o);
        if (selected == "norm") return cmd_norm(o);
        if (selected == "mul") return cmd_mul(o);
        if (selected == "star") return cmd_star(o);
        if (selected == "quantize") return cmd_quantize(o);
        if (selected == "dequantize") return cmd_dequantize(o);
        if (selected == "bracket") return cmd_bracket(o);
        if (selected == "rank") return cmd_rank(o);
        if (selected == "unrank") return cmd_unrank(o);
        if (selected == "enum-trees") return cmd_enum_trees(o);
        if (selected == "coeff") return cmd_coeff(o);
        if (selected == "verify") return cmd_verify(o);
        throw ConfigError("no command");
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ContextMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    }
}
