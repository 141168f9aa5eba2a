#include "epoche/errors.hpp"
#include "epoche/verify.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace epoche;

TEST(Verify, SuiteNames) {
    const auto& names = suite_names();
    for (const char* s : {"order", "rank", "diamond", "star-oracle", "q-poisson", "weyl", "cocycle", "coequivariance",
                          "distortion", "projector", "qybe"})
        EXPECT_NE(std::find(names.begin(), names.end(), s), names.end()) << s;
}

TEST(Verify, ConfigErrors) {
    RunConfig cfg;
    EXPECT_THROW(run_suite("no-such-suite", cfg), ConfigError);
    cfg.N = 2;
    EXPECT_THROW(run_suite("distortion", cfg), ConfigError);
    cfg.N = 3;
    cfg.d = 0;
    EXPECT_THROW(run_suite("rank", cfg), ConfigError);
}

TEST(Verify, SameSeedSameBytes) {
    RunConfig cfg;
    cfg.d = 2;
    cfg.N = 3;
    cfg.trials = 30;
    cfg.seed = 5;
    const auto a = run_suite("q-poisson", cfg).to_json().dump();
    const auto b = run_suite("q-poisson", cfg).to_json().dump();
    EXPECT_EQ(a, b);
    setenv("EPOCHE_THREADS", "3", 1);
    const auto c = run_suite("q-poisson", cfg).to_json().dump();
    unsetenv("EPOCHE_THREADS");
    EXPECT_EQ(a, c);
}

TEST(Verify, ReportShape) {
    RunConfig cfg;
    cfg.trials = 20;
    auto r = run_suite("rank", cfg);
    EXPECT_TRUE(r.pass());
    auto j = r.to_json();
    EXPECT_EQ(j["suite"], "rank");
    EXPECT_EQ(j["seed"], 1);
    EXPECT_EQ(j["d"], 1);
    EXPECT_EQ(j["N"], 3);
    ASSERT_TRUE(j["properties"].is_array());
    for (const auto& p : j["properties"]) {
        for (const char* key : {"name", "pass", "informational", "instances", "mode", "counterexample", "detail"})
            EXPECT_TRUE(p.contains(key)) << key;
        EXPECT_GT(p["instances"].get<std::uint64_t>(), 0u);
    }
    EXPECT_NE(r.to_text().find("result: PASS"), std::string::npos);
}

TEST(Verify, FailuresCarryACounterexample) {
    RunConfig cfg;
    cfg.d = 2;
    cfg.N = 2;
    auto r = run_suite("projector", cfg);
    EXPECT_FALSE(r.pass());
    bool seen = false;
    for (const auto& p : r.properties)
        if (!p.pass && !p.informational) {
            seen = true;
            EXPECT_FALSE(p.counterexample.empty()) << p.name;
        }
    EXPECT_TRUE(seen);
}

TEST(Verify, ParallelMapKeepsOrder) {
    setenv("EPOCHE_THREADS", "4", 1);
    EXPECT_EQ(worker_count(), 4u);
    auto v = parallel_map(1000, [](std::size_t i) { return i * i; });
    unsetenv("EPOCHE_THREADS");
    ASSERT_EQ(v.size(), 1000u);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i * i);
    EXPECT_THROW(parallel_map(10, [](std::size_t i) -> int { throw std::runtime_error(std::to_string(i)); }),
                 std::runtime_error);
}
