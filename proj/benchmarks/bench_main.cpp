#include "epoche/io.hpp"
#include "epoche/quantize.hpp"
#include "epoche/trees.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace epoche;

namespace {

Word random_word(std::mt19937_64& rng, int d, int len) {
    std::uniform_int_distribution<int> label(1, 2 * d);
    Word w;
    for (int k = 0; k < len; ++k) w.emplace_back(label(rng));
    return w;
}

}  // namespace

static void BM_NormalOrder(benchmark::State& state) {
    const int d = 2, N = 3;
    const int len = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::vector<Word> words;
    for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, d, len));
    std::size_t i = 0;
    for (auto _ : state) {
        // fresh context each round so the rewrite cache does not hide the work
        auto ctx = Context::make(d, N);
        benchmark::DoNotOptimize(normal_order(ctx, words[i++ % words.size()]));
    }
}
BENCHMARK(BM_NormalOrder)->DenseRange(3, 6);

static void BM_StarWeyl(benchmark::State& state) {
    const auto a_text = state.range(0) == 0 ? "h[1]" : "h[1] h[2]";
    for (auto _ : state) {
        auto ctx = Context::make(1, 3);
        benchmark::DoNotOptimize(star_weyl(parse_shadow(ctx, a_text), parse_shadow(ctx, "h[2] h[1]")));
    }
}
BENCHMARK(BM_StarWeyl)->Arg(0)->Arg(1);

static void BM_StarWeylSpecialized(benchmark::State& state) {
    for (auto _ : state) {
        auto ctx = Context::make(1, 3, parse_specialization("1,2=3/2"));
        benchmark::DoNotOptimize(star_weyl(parse_shadow(ctx, "h[1] h[2]"), parse_shadow(ctx, "h[2] h[1]")));
    }
}
BENCHMARK(BM_StarWeylSpecialized);

static void BM_RankUnrank(benchmark::State& state) {
    const int d = 2;
    std::mt19937_64 rng(2);
    std::vector<mpz_class> ranks;
    for (int i = 0; i < 256; ++i) ranks.emplace_back(static_cast<unsigned long>(rng() % 1000000 + 1));
    std::size_t i = 0;
    for (auto _ : state) {
        auto g = unrank(ranks[i++ % ranks.size()], d);
        benchmark::DoNotOptimize(rank(g, d));
    }
}
BENCHMARK(BM_RankUnrank);

static void BM_LaurentMul(benchmark::State& state) {
    const auto a = parse_coefficient("(q[1,2] + q[1,3]^-1 q[2,4] + 2 q[3,4]^2 + 1)");
    const auto p = a.numerator().pow(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(p * p);
}
BENCHMARK(BM_LaurentMul)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK_MAIN();
