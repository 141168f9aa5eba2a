#pragma once

#include "epoche/algebra.hpp"

#include <map>
#include <mutex>

namespace epoche {

// Memo tables shared by everything computed in one context. Values are plain
// term maps so that the context does not own elements pointing back at it.
struct ContextCache {
    static constexpr std::size_t max_entries = 200000;

    std::mutex mu;
    std::map<Word, EnvelopeElement::Terms> normal_forms;  // leftmost strategy, coefficient 1
    std::map<Word, EnvelopeElement::Terms> weyl;          // W of a basis monomial

    template <class Map>
    static bool lookup(std::mutex& m, const Map& table, const Word& w, EnvelopeElement::Terms& out) {
        std::lock_guard lock(m);
        auto it = table.find(w);
        if (it == table.end()) return false;
        out = it->second;
        return true;
    }
    template <class Map>
    static void store(std::mutex& m, Map& table, const Word& w, const EnvelopeElement::Terms& v) {
        std::lock_guard lock(m);
        if (table.size() >= max_entries) table.clear();
        table.emplace(w, v);
    }
};

}  // namespace epoche
