#pragma once

#include <array>
#include <string>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

// idf weights aligned to vocabulary slots (retained tokens + OOV).
struct IdfModel {
    std::vector<double> idf;
    long long n_documents = 0;
};

// Treatment block: entry for token w is its occurrence count in the bill;
// out-of-vocabulary occurrences accumulate in the OOV slot.
std::vector<double> bow(const Bill& bill, const Vocabulary& vocab);

// idf(w) = ln(N / df(w)), natural log, no additive smoothing. The OOV slot
// uses ln(N / max(df, 1)) so an OOV-free fit corpus stays finite.
// `rows` restricts the fit to a fold; null means all bills.
IdfModel tfidf_fit(const Dataset& dataset, const Vocabulary& vocab, const std::vector<int>* rows = nullptr);

// entry(w) = (n_w / total tokens in bill) * idf(w); empty bill -> zeros
std::vector<double> tfidf_transform(const Bill& bill, const Vocabulary& vocab, const IdfModel& model);

// Schema plus the training-fold scaling statistics for numeric features.
// Numeric order: age, total_amount, then (sum, mean, max) of count, cost,
// factor. Categorical scalars one-hot expand.
struct StaticEncoder {
    static constexpr int n_numeric = 11;
    DatasetSchema schema;
    std::array<double, n_numeric> lo{};
    std::array<double, n_numeric> hi{};

    int general_width() const;  // age + sex + insurance + specialty
    int visit_width() const;    // bill-level numerics/categoricals + item summaries
    int width() const { return general_width() + visit_width(); }
};

StaticEncoder fit_static_encoder(const Dataset& dataset, const std::vector<int>* rows = nullptr);

// Full static block, general block first. Values scale to [0,1] over the
// training range (zero-range columns collapse to 0); out-of-schema
// categoricals throw.
std::vector<double> encode_static(const Bill& bill, const StaticEncoder& encoder);
std::vector<double> encode_general(const Bill& bill, const StaticEncoder& encoder);
std::vector<double> encode_visit_numeric(const Bill& bill, const StaticEncoder& encoder);

enum class FeatureMode { bow, tfidf };

// Treatment block (per mode) concatenated with the static block; width is
// vocab.slot_count() + encoder.width(). tfidf mode requires a fitted model.
std::vector<double> assemble(const Bill& bill, const Vocabulary& vocab, const IdfModel* idf,
                             const StaticEncoder& encoder, FeatureMode mode);

std::vector<std::string> treatment_feature_names(const Vocabulary& vocab);
std::vector<std::string> static_feature_names(const StaticEncoder& encoder);
std::vector<std::string> feature_names(const Vocabulary& vocab, const StaticEncoder& encoder);

}  // namespace claimsentinel
