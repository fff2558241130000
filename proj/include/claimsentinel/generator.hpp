#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

// Synthetic-corpus knobs. Desk-scale defaults; the full-scale shape
// (vocab 2205, 381k bills) stays configurable.
struct GeneratorConfig {
    int vocab_size = 500;
    double zipf_exponent = 0.9;   // slightly sub-Zipf, heavier tail
    double fraud_rate = 0.02;
    int n_bills = 20000;
    int length_mode = 2;          // modal number of billing items
    int max_length = 50;          // lengths clamp here ("50 or more" bin)
    int n_signal_pairs = 12;
    double signal_strength = 0.8; // P(fraud | a signal pair co-occurs)
    uint64_t seed = 42;
};

// Deterministic given the seed. Token frequencies follow a Zipf law with
// the configured exponent; bill lengths are shifted-geometric with the
// configured mode; fraud hinges on planted co-occurring treatment pairs,
// with the non-signal base rate calibrated so the marginal fraud rate
// lands on fraud_rate. A designated insurance type mildly raises fraud
// odds among non-signal bills.
Dataset generate_synthetic(const GeneratorConfig& config);

// Tokens sorted by descending corpus frequency, rank starting at 1, ties
// broken by token code ascending. Throws on a corpus with no tokens.
std::vector<std::pair<int, long long>> rank_frequency(const Dataset& dataset);

// max over vocabulary tokens of |Pearson corr(per-bill presence, label)|.
// Zero-variance presence columns are skipped; constant labels throw.
double max_label_correlation(const Dataset& dataset, const Vocabulary& vocab);

// counts[k] = number of bills with min(length, cap) == k, for k in 0..cap
std::vector<long long> length_histogram(const Dataset& dataset, int cap = 50);

}  // namespace claimsentinel
