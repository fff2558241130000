#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "claimsentinel/dataset.hpp"

namespace claimsentinel {

// Token<->index map over treatment codes. Retained tokens are ordered by
// descending frequency (ties by code, ascending); everything rarer than
// min_count maps to a dedicated out-of-vocabulary slot at index size().
struct Vocabulary {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> index;
    std::vector<long long> counts;  // aligned with tokens
    int min_count = 1;
    int oov_index = 0;

    int size() const { return static_cast<int>(tokens.size()); }

    // retained tokens + the OOV slot; rows of feature/embedding blocks
    int slot_count() const { return static_cast<int>(tokens.size()) + 1; }

    int lookup(const std::string& code) const {
        auto it = index.find(code);
        return it == index.end() ? oov_index : it->second;
    }

    bool is_retained(const std::string& code) const { return index.count(code) > 0; }

    // order-sensitive content hash, used by model checkpoints
    uint64_t content_hash() const;
};

Vocabulary build_vocabulary(const std::vector<Bill>& bills, int min_count);

// Text round-trip preserving slot order: first line "min_count N", then one
// "token count" line per retained slot.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

}  // namespace claimsentinel
