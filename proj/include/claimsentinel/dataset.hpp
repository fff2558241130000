#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace claimsentinel {

// General static features of a bill: patient, insurance, doctor.
struct StaticFeatures {
    int age = 0;
    int sex = 0;
    int insurance_type = 0;
    int doctor_specialty = 0;

    bool operator==(const StaticFeatures&) const = default;
};

// Visit-specific features. The per-item arrays run parallel to the bill's
// treatment sequence; the scalars describe the bill as a whole.
struct VisitFeatures {
    std::vector<int> count;
    std::vector<double> cost;
    std::vector<double> factor;
    std::vector<int> group;
    std::vector<int> benefit_kind;
    std::vector<int> cost_category;
    double total_amount = 0.0;
    int billing_type = 0;
    int performance_type = 0;

    bool operator==(const VisitFeatures&) const = default;
};

// One doctor's bill: a variable-length treatment sequence plus metadata
// and a binary fraud label.
struct Bill {
    std::string id;
    std::vector<std::string> treatments;
    StaticFeatures static_features;
    VisitFeatures visit;
    int label = 0;  // 0 = non-fraud, 1 = fraud

    size_t length() const { return treatments.size(); }

    bool operator==(const Bill&) const = default;
};

// Cardinalities of the categorical fields.
struct DatasetSchema {
    int sex_card = 2;
    int insurance_type_card = 4;
    int doctor_specialty_card = 20;
    int group_card = 17;
    int benefit_kind_card = 24;
    int cost_category_card = 15;
    int billing_type_card = 3;
    int performance_type_card = 3;

    bool operator==(const DatasetSchema&) const = default;
};

struct Dataset {
    std::vector<Bill> bills;
    DatasetSchema schema;

    size_t size() const { return bills.size(); }
    std::vector<int> labels() const;

    bool operator==(const Dataset&) const = default;
};

// Throws std::invalid_argument naming the offending field. `where` is
// prefixed to the message (e.g. "line 12").
void validate_bill(const Bill& bill, const DatasetSchema& schema, const std::string& where = "");

// Validates every bill plus id uniqueness.
void validate_dataset(const Dataset& dataset);

}  // namespace claimsentinel
