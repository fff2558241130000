#include "claimsentinel/dataset.hpp"

#include <stdexcept>
#include <unordered_set>

namespace claimsentinel {

std::vector<int> Dataset::labels() const {
    std::vector<int> out;
    out.reserve(bills.size());
    for (const auto& b : bills) out.push_back(b.label);
    return out;
}

namespace {

void fail(const std::string& where, const std::string& field, const std::string& what) {
    std::string msg = where.empty() ? "" : where + ": ";
    throw std::invalid_argument(msg + "field '" + field + "': " + what);
}

void check_categorical(int value, int card, const char* field, const std::string& where) {
    if (value < 0 || value >= card)
        fail(where, field, "value " + std::to_string(value) + " outside cardinality " + std::to_string(card));
}

}  // namespace

void validate_bill(const Bill& bill, const DatasetSchema& schema, const std::string& where) {
    if (bill.id.empty()) fail(where, "id", "empty");
    const size_t k = bill.treatments.size();
    for (const auto& t : bill.treatments)
        if (t.empty()) fail(where, "treatments", "empty treatment code");

    const auto& v = bill.visit;
    if (v.count.size() != k) fail(where, "visit.count", "length != treatment count");
    if (v.cost.size() != k) fail(where, "visit.cost", "length != treatment count");
    if (v.factor.size() != k) fail(where, "visit.factor", "length != treatment count");
    if (v.group.size() != k) fail(where, "visit.group", "length != treatment count");
    if (v.benefit_kind.size() != k) fail(where, "visit.benefit_kind", "length != treatment count");
    if (v.cost_category.size() != k) fail(where, "visit.cost_category", "length != treatment count");

    for (size_t i = 0; i < k; ++i) {
        if (v.count[i] <= 0) fail(where, "visit.count", "must be positive");
        if (v.cost[i] < 0) fail(where, "visit.cost", "must be non-negative");
        if (v.factor[i] <= 0) fail(where, "visit.factor", "must be positive");
        check_categorical(v.group[i], schema.group_card, "visit.group", where);
        check_categorical(v.benefit_kind[i], schema.benefit_kind_card, "visit.benefit_kind", where);
        check_categorical(v.cost_category[i], schema.cost_category_card, "visit.cost_category", where);
    }
    if (v.total_amount < 0) fail(where, "visit.total_amount", "must be non-negative");
    check_categorical(v.billing_type, schema.billing_type_card, "visit.billing_type", where);
    check_categorical(v.performance_type, schema.performance_type_card, "visit.performance_type", where);

    const auto& s = bill.static_features;
    if (s.age < 0 || s.age > 120) fail(where, "static.age", "outside [0,120]");
    check_categorical(s.sex, schema.sex_card, "static.sex", where);
    check_categorical(s.insurance_type, schema.insurance_type_card, "static.insurance_type", where);
    check_categorical(s.doctor_specialty, schema.doctor_specialty_card, "static.doctor_specialty", where);

    if (bill.label != 0 && bill.label != 1) fail(where, "label", "must be 0 or 1");
}

void validate_dataset(const Dataset& dataset) {
    std::unordered_set<std::string> ids;
    ids.reserve(dataset.bills.size());
    for (size_t i = 0; i < dataset.bills.size(); ++i) {
        const auto& b = dataset.bills[i];
        validate_bill(b, dataset.schema, "bill " + std::to_string(i));
        if (!ids.insert(b.id).second)
            throw std::invalid_argument("bill " + std::to_string(i) + ": duplicate id '" + b.id + "'");
    }
}

}  // namespace claimsentinel
