#include "claimsentinel/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace claimsentinel {

std::vector<double> bow(const Bill& bill, const Vocabulary& vocab) {
    std::vector<double> out(vocab.slot_count(), 0.0);
    for (const auto& code : bill.treatments) out[vocab.lookup(code)] += 1.0;
    return out;
}

IdfModel tfidf_fit(const Dataset& dataset, const Vocabulary& vocab, const std::vector<int>* rows) {
    std::vector<long long> df(vocab.slot_count(), 0);
    long long n_docs = 0;
    std::vector<char> seen(vocab.slot_count(), 0);
    auto visit = [&](const Bill& bill) {
        ++n_docs;
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& code : bill.treatments) {
            std::size_t slot = vocab.lookup(code);
            if (!seen[slot]) {
                seen[slot] = 1;
                ++df[slot];
            }
        }
    };
    if (rows) {
        for (int r : *rows) visit(dataset.bills.at(static_cast<std::size_t>(r)));
    } else {
        for (const auto& bill : dataset.bills) visit(bill);
    }
    if (n_docs == 0) throw std::invalid_argument("tfidf_fit: empty fitting corpus");

    IdfModel model;
    model.n_documents = n_docs;
    model.idf.resize(static_cast<std::size_t>(vocab.slot_count()));
    for (std::size_t w = 0; w < model.idf.size(); ++w) {
        // Retained tokens always have df >= 1 on the full corpus, but a fold
        // restricted fit (and the OOV slot) can see df = 0; clamp keeps the
        // weight finite and maximal.
        long long d = std::max(df[w], 1LL);
        model.idf[w] = std::log(static_cast<double>(n_docs) / static_cast<double>(d));
    }
    return model;
}

std::vector<double> tfidf_transform(const Bill& bill, const Vocabulary& vocab, const IdfModel& model) {
    if (model.idf.size() != static_cast<std::size_t>(vocab.slot_count()))
        throw std::invalid_argument("tfidf_transform: model width does not match vocabulary");
    std::vector<double> out(vocab.slot_count(), 0.0);
    if (bill.treatments.empty()) return out;
    for (const auto& code : bill.treatments) out[vocab.lookup(code)] += 1.0;
    double total = static_cast<double>(bill.treatments.size());
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = out[w] / total * model.idf[w];
    return out;
}

namespace {

// Numeric column order shared by fit and encode: age, total_amount, then
// (sum, mean, max) for count, cost, factor.
std::array<double, StaticEncoder::n_numeric> numeric_row(const Bill& bill) {
    std::array<double, StaticEncoder::n_numeric> v{};
    v[0] = static_cast<double>(bill.static_features.age);
    v[1] = bill.visit.total_amount;
    const std::size_t k = bill.visit.count.size();
    auto summarize = [&](auto getter, int base) {
        double sum = 0.0;
        double mx = k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < k; ++i) {
            double x = getter(i);
            sum += x;
            mx = std::max(mx, x);
        }
        v[base] = sum;
        v[base + 1] = k == 0 ? 0.0 : sum / static_cast<double>(k);
        v[base + 2] = mx;
    };
    summarize([&](std::size_t i) { return static_cast<double>(bill.visit.count[i]); }, 2);
    summarize([&](std::size_t i) { return bill.visit.cost[i]; }, 5);
    summarize([&](std::size_t i) { return bill.visit.factor[i]; }, 8);
    return v;
}

double scaled(double x, double lo, double hi) {
    if (hi <= lo) return 0.0;  // zero-range column
    return (x - lo) / (hi - lo);
}

void one_hot(std::vector<double>& out, int value, int cardinality, const char* name) {
    if (value < 0 || value >= cardinality)
        throw std::invalid_argument(std::string("encode_static: '") + name + "' out of schema range");
    std::size_t base = out.size();
    out.resize(base + static_cast<std::size_t>(cardinality), 0.0);
    out[base + static_cast<std::size_t>(value)] = 1.0;
}

}  // namespace

int StaticEncoder::general_width() const {
    return 1 + schema.sex_card + schema.insurance_type_card + schema.doctor_specialty_card;
}

int StaticEncoder::visit_width() const {
    return 1 + schema.billing_type_card + schema.performance_type_card + (n_numeric - 2);
}

StaticEncoder fit_static_encoder(const Dataset& dataset, const std::vector<int>* rows) {
    StaticEncoder enc;
    enc.schema = dataset.schema;
    enc.lo.fill(std::numeric_limits<double>::infinity());
    enc.hi.fill(-std::numeric_limits<double>::infinity());
    bool any = false;
    auto visit = [&](const Bill& bill) {
        any = true;
        auto v = numeric_row(bill);
        for (int j = 0; j < StaticEncoder::n_numeric; ++j) {
            enc.lo[j] = std::min(enc.lo[j], v[j]);
            enc.hi[j] = std::max(enc.hi[j], v[j]);
        }
    };
    if (rows) {
        for (int r : *rows) visit(dataset.bills.at(static_cast<std::size_t>(r)));
    } else {
        for (const auto& bill : dataset.bills) visit(bill);
    }
    if (!any) throw std::invalid_argument("fit_static_encoder: empty fitting corpus");
    return enc;
}

std::vector<double> encode_general(const Bill& bill, const StaticEncoder& encoder) {
    auto v = numeric_row(bill);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(encoder.general_width()));
    out.push_back(scaled(v[0], encoder.lo[0], encoder.hi[0]));
    one_hot(out, bill.static_features.sex, encoder.schema.sex_card, "sex");
    one_hot(out, bill.static_features.insurance_type, encoder.schema.insurance_type_card, "insurance_type");
    one_hot(out, bill.static_features.doctor_specialty, encoder.schema.doctor_specialty_card,
            "doctor_specialty");
    return out;
}

std::vector<double> encode_visit_numeric(const Bill& bill, const StaticEncoder& encoder) {
    auto v = numeric_row(bill);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(encoder.visit_width()));
    out.push_back(scaled(v[1], encoder.lo[1], encoder.hi[1]));
    one_hot(out, bill.visit.billing_type, encoder.schema.billing_type_card, "billing_type");
    one_hot(out, bill.visit.performance_type, encoder.schema.performance_type_card, "performance_type");
    for (int j = 2; j < StaticEncoder::n_numeric; ++j) out.push_back(scaled(v[j], encoder.lo[j], encoder.hi[j]));
    return out;
}

std::vector<double> encode_static(const Bill& bill, const StaticEncoder& encoder) {
    std::vector<double> out = encode_general(bill, encoder);
    std::vector<double> visit = encode_visit_numeric(bill, encoder);
    out.insert(out.end(), visit.begin(), visit.end());
    return out;
}

std::vector<double> assemble(const Bill& bill, const Vocabulary& vocab, const IdfModel* idf,
                             const StaticEncoder& encoder, FeatureMode mode) {
    std::vector<double> out;
    if (mode == FeatureMode::tfidf) {
        if (!idf) throw std::invalid_argument("assemble: tfidf mode requires a fitted idf model");
        out = tfidf_transform(bill, vocab, *idf);
    } else {
        out = bow(bill, vocab);
    }
    std::vector<double> stat = encode_static(bill, encoder);
    out.insert(out.end(), stat.begin(), stat.end());
    return out;
}

std::vector<std::string> treatment_feature_names(const Vocabulary& vocab) {
    std::vector<std::string> names;
    names.reserve(vocab.slot_count());
    for (const auto& code : vocab.tokens) names.push_back("tok:" + code);
    names.push_back("tok:<oov>");
    return names;
}

std::vector<std::string> static_feature_names(const StaticEncoder& encoder) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(encoder.width()));
    auto expand = [&](const char* base, int cardinality) {
        for (int c = 0; c < cardinality; ++c) names.push_back(std::string(base) + "=" + std::to_string(c));
    };
    names.push_back("age");
    expand("sex", encoder.schema.sex_card);
    expand("insurance_type", encoder.schema.insurance_type_card);
    expand("doctor_specialty", encoder.schema.doctor_specialty_card);
    names.push_back("total_amount");
    expand("billing_type", encoder.schema.billing_type_card);
    expand("performance_type", encoder.schema.performance_type_card);
    static const char* fields[] = {"count", "cost", "factor"};
    static const char* stats[] = {"sum", "mean", "max"};
    for (const char* f : fields)
        for (const char* s : stats) names.push_back(std::string(f) + "_" + s);
    return names;
}

std::vector<std::string> feature_names(const Vocabulary& vocab, const StaticEncoder& encoder) {
    std::vector<std::string> names = treatment_feature_names(vocab);
    std::vector<std::string> stat = static_feature_names(encoder);
    names.insert(names.end(), stat.begin(), stat.end());
    return names;
}

}  // namespace claimsentinel
