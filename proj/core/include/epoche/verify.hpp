#pragma once

#include "epoche/context.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace epoche {

struct RunConfig {
    int d = 1;
    int N = 3;
    std::string q = "symbolic";  // "symbolic", "all-ones" or "i,j=v;..."
    std::uint64_t seed = 1;
    int trials = 0;  // 0: the suite's default

    ContextPtr context() const { return Context::make(d, N, parse_specialization(q)); }
};

struct PropertyReport {
    std::string name;
    bool pass = true;
    bool informational = false;  // reported but does not decide the exit status
    std::uint64_t instances = 0;
    std::string mode;  // how it was checked, e.g. "symbolic", "exhaustive"
    std::string counterexample;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    RunConfig config;
    std::vector<PropertyReport> properties;

    bool pass() const;
    const PropertyReport* find(const std::string& name) const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

const std::vector<std::string>& suite_names();

// Throws ConfigError for an unknown suite or an unsupported configuration.
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

// Worker count from EPOCHE_THREADS, else the hardware concurrency.
unsigned worker_count();

// f(i) for i in [0, n) on worker threads; results keep their index order.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };
    const unsigned k = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (k <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < k; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace epoche
