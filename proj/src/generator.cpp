#include "claimsentinel/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "claimsentinel/rng.hpp"

namespace claimsentinel {

namespace {

// Internal shape constants. Kept out of GeneratorConfig: they set texture,
// not the calibrated targets.
constexpr double kGeometricSuccess = 0.15;      // mean length ~ mode + 5.7
constexpr double kInsuranceOddsBoost = 1.5;     // designated insurance type 0
constexpr double kFactorChoices[] = {1.0, 1.15, 1.3, 2.3};
// Pair plants land in this multiple of fraud_rate of all bills; at the default
// signal_strength the planted population then carries the whole fraud budget,
// which keeps the realized marginal centered on fraud_rate.
constexpr double kPlantFactor = 1.25;
// Lone signal tokens are sprinkled into ordinary bills at this multiple of the
// fraud rate. Without them, a signal token's presence alone would predict
// fraud and the per-token label correlation would creep past the design target.
constexpr double kDecoySinglesFactor = 10.0;

std::string token_code(int rank_index, int width) {
    std::string digits = std::to_string(rank_index + 1);
    std::string out = "T";
    out.append(width - std::min<size_t>(width, digits.size()), '0');
    out += digits;
    return out;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

Dataset generate_synthetic(const GeneratorConfig& config) {
    if (config.vocab_size < 1) throw std::invalid_argument("generator: vocab_size must be >= 1");
    if (!(config.fraud_rate > 0.0 && config.fraud_rate < 1.0))
        throw std::invalid_argument("generator: fraud_rate must be in (0,1)");
    if (config.n_bills < 0) throw std::invalid_argument("generator: n_bills must be >= 0");
    if (config.length_mode < 1) throw std::invalid_argument("generator: length_mode must be >= 1");
    if (config.max_length < config.length_mode)
        throw std::invalid_argument("generator: max_length must be >= length_mode");
    if (config.n_signal_pairs < 1) throw std::invalid_argument("generator: n_signal_pairs must be >= 1");
    if (!(config.signal_strength > 0.0 && config.signal_strength <= 1.0))
        throw std::invalid_argument("generator: signal_strength must be in (0,1]");
    if (config.zipf_exponent <= 0.0) throw std::invalid_argument("generator: zipf_exponent must be positive");

    // Signal pairs live in a mid-rank band, kept toward the frequent side so
    // each signal token's natural occurrences drown out its planted ones and
    // no single token gives fraud away.
    const int band_lo = std::max(1, config.vocab_size / 20);
    const int band_hi = config.vocab_size / 6;
    const int band_size = std::max(0, band_hi - band_lo);
    if (2 * config.n_signal_pairs > band_size)
        throw std::invalid_argument("generator: n_signal_pairs exceeds available mid-rank pairs");

    Dataset data;

    // Zipf CDF over ranks 1..vocab_size
    std::vector<double> cdf(config.vocab_size);
    {
        double acc = 0.0;
        for (int r = 0; r < config.vocab_size; ++r) {
            acc += std::pow(static_cast<double>(r + 1), -config.zipf_exponent);
            cdf[r] = acc;
        }
        for (auto& c : cdf) c /= acc;
    }

    const int code_width = static_cast<int>(std::to_string(config.vocab_size).size());
    std::vector<std::string> codes(config.vocab_size);
    for (int r = 0; r < config.vocab_size; ++r) codes[r] = token_code(r, code_width);

    Rng rng(derive_seed(config.seed, "generator"));

    std::vector<std::pair<int, int>> signal_pairs(config.n_signal_pairs);
    {
        auto picks = rng.sample_without_replacement(band_size, 2 * config.n_signal_pairs);
        for (int p = 0; p < config.n_signal_pairs; ++p)
            signal_pairs[p] = {band_lo + static_cast<int>(picks[2 * p]),
                               band_lo + static_cast<int>(picks[2 * p + 1])};
    }

    auto sample_rank = [&]() {
        const double u = rng.next_double();
        return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };

    const int id_width = static_cast<int>(std::to_string(std::max(config.n_bills, 1)).size());
    const double plant_prob = std::min(kPlantFactor * config.fraud_rate, 1.0);
    const double decoy_prob = std::min(kDecoySinglesFactor * config.fraud_rate, 0.5);

    // Pass 1: contents. Labels need the realized plant count, so they wait.
    // Pairs and decoy tokens rotate round-robin so no token soaks up a random
    // excess of planted mass.
    std::vector<char> has_signal(config.n_bills, 0);
    std::size_t next_pair = 0, next_decoy = 0;
    data.bills.resize(config.n_bills);
    for (int i = 0; i < config.n_bills; ++i) {
        Bill& b = data.bills[i];
        {
            std::string digits = std::to_string(i + 1);
            b.id = "B";
            b.id.append(id_width - std::min<size_t>(id_width, digits.size()), '0');
            b.id += digits;
        }
        b.static_features.age = static_cast<int>(rng.uniform_int(1, 99));
        b.static_features.sex = static_cast<int>(rng.below(data.schema.sex_card));
        b.static_features.insurance_type = static_cast<int>(rng.below(data.schema.insurance_type_card));
        b.static_features.doctor_specialty = static_cast<int>(rng.below(data.schema.doctor_specialty_card));

        // shifted geometric: support starts at the mode. Draws past max_length
        // are rejected and retried — capping them instead would pile the tail
        // mass onto max_length and steal the histogram mode for short caps.
        int k;
        do {
            k = config.length_mode;
            while (rng.next_double() >= kGeometricSuccess) ++k;
        } while (k > config.max_length);

        std::vector<int> ranks(k);
        for (int j = 0; j < k; ++j) ranks[j] = sample_rank();

        if (k >= 2 && rng.bernoulli(plant_prob)) {
            const auto& [a, bb] = signal_pairs[next_pair++ % signal_pairs.size()];
            const int j1 = static_cast<int>(rng.below(k));
            const int j2 = static_cast<int>((j1 + 1 + rng.below(k - 1)) % k);
            ranks[j1] = a;
            ranks[j2] = bb;
            has_signal[i] = 1;
        } else if (rng.bernoulli(decoy_prob)) {
            // a lone signal token, no partner: keeps single-token presence
            // common in ordinary bills
            const auto& pair = signal_pairs[(next_decoy / 2) % signal_pairs.size()];
            ranks[rng.below(k)] = (next_decoy % 2) ? pair.second : pair.first;
            ++next_decoy;
        }

        b.treatments.resize(k);
        b.visit.count.resize(k);
        b.visit.cost.resize(k);
        b.visit.factor.resize(k);
        b.visit.group.resize(k);
        b.visit.benefit_kind.resize(k);
        b.visit.cost_category.resize(k);
        double total = 0.0;
        for (int j = 0; j < k; ++j) {
            const std::string& code = codes[ranks[j]];
            b.treatments[j] = code;
            b.visit.count[j] = static_cast<int>(rng.uniform_int(1, 3));
            b.visit.cost[j] = round2(rng.uniform(5.0, 500.0));
            b.visit.factor[j] = kFactorChoices[rng.below(4)];
            // stable token -> category assignment
            b.visit.group[j] = static_cast<int>(fnv1a64(code + "/g") % data.schema.group_card);
            b.visit.benefit_kind[j] = static_cast<int>(fnv1a64(code + "/b") % data.schema.benefit_kind_card);
            b.visit.cost_category[j] = static_cast<int>(fnv1a64(code + "/c") % data.schema.cost_category_card);
            total += b.visit.count[j] * b.visit.cost[j] * b.visit.factor[j];
        }
        b.visit.total_amount = round2(total);
        b.visit.billing_type = static_cast<int>(rng.below(data.schema.billing_type_card));
        b.visit.performance_type = static_cast<int>(rng.below(data.schema.performance_type_card));

    }

    // Calibrate the non-planted base rate so the marginal hits fraud_rate.
    long long n_signal = 0;
    for (char s : has_signal) n_signal += s;
    double base_p = config.fraud_rate;
    if (config.n_bills > 0 && n_signal < config.n_bills) {
        base_p = (config.fraud_rate * config.n_bills - config.signal_strength * n_signal) /
                 static_cast<double>(config.n_bills - n_signal);
        base_p = std::clamp(base_p, 0.0, 1.0);
    }

    // Insurance interaction, normalized so the non-signal marginal is base_p.
    const double pi0 = 1.0 / data.schema.insurance_type_card;
    const double norm = pi0 * kInsuranceOddsBoost + (1.0 - pi0);
    for (int i = 0; i < config.n_bills; ++i) {
        double p;
        if (has_signal[i]) {
            p = config.signal_strength;
        } else {
            const double boost = data.bills[i].static_features.insurance_type == 0 ? kInsuranceOddsBoost : 1.0;
            p = std::clamp(base_p * boost / norm, 0.0, 1.0);
        }
        data.bills[i].label = rng.bernoulli(p) ? 1 : 0;
    }

    return data;
}

std::vector<std::pair<int, long long>> rank_frequency(const Dataset& dataset) {
    std::map<std::string, long long> freq;
    for (const auto& b : dataset.bills)
        for (const auto& t : b.treatments) ++freq[t];
    if (freq.empty()) throw std::invalid_argument("rank_frequency: empty corpus");

    std::vector<std::pair<std::string, long long>> items(freq.begin(), freq.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::pair<int, long long>> out;
    out.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i) out.emplace_back(static_cast<int>(i + 1), items[i].second);
    return out;
}

double max_label_correlation(const Dataset& dataset, const Vocabulary& vocab) {
    const size_t n = dataset.bills.size();
    if (n == 0) throw std::invalid_argument("max_label_correlation: empty dataset");

    long long n_pos = 0;
    for (const auto& b : dataset.bills) n_pos += b.label;
    if (n_pos == 0 || n_pos == static_cast<long long>(n))
        throw std::invalid_argument("max_label_correlation: degenerate labels");

    const int v = vocab.size();
    std::vector<long long> present(v, 0), present_and_pos(v, 0);
    std::vector<int> seen_slots;
    for (const auto& b : dataset.bills) {
        seen_slots.clear();
        for (const auto& t : b.treatments) {
            auto it = vocab.index.find(t);
            if (it == vocab.index.end()) continue;
            seen_slots.push_back(it->second);
        }
        std::sort(seen_slots.begin(), seen_slots.end());
        seen_slots.erase(std::unique(seen_slots.begin(), seen_slots.end()), seen_slots.end());
        for (int s : seen_slots) {
            ++present[s];
            present_and_pos[s] += b.label;
        }
    }

    const double py = static_cast<double>(n_pos) / n;
    const double var_y = py * (1.0 - py);
    double best = 0.0;
    for (int s = 0; s < v; ++s) {
        const double px = static_cast<double>(present[s]) / n;
        if (px <= 0.0 || px >= 1.0) continue;  // zero-variance column
        const double pxy = static_cast<double>(present_and_pos[s]) / n;
        const double r = (pxy - px * py) / std::sqrt(px * (1.0 - px) * var_y);
        best = std::max(best, std::abs(r));
    }
    return best;
}

std::vector<long long> length_histogram(const Dataset& dataset, int cap) {
    if (cap < 1) throw std::invalid_argument("length_histogram: cap must be >= 1");
    std::vector<long long> counts(cap + 1, 0);
    for (const auto& b : dataset.bills)
        ++counts[std::min<int>(static_cast<int>(b.length()), cap)];
    return counts;
}

}  // namespace claimsentinel
