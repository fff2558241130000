#include "claimsentinel/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace claimsentinel {

using nlohmann::json;

namespace {

json bill_to_json(const Bill& b) {
    json j;
    j["id"] = b.id;
    j["treatments"] = b.treatments;
    j["static"] = {{"age", b.static_features.age},
                   {"sex", b.static_features.sex},
                   {"insurance_type", b.static_features.insurance_type},
                   {"doctor_specialty", b.static_features.doctor_specialty}};
    j["visit"] = {{"count", b.visit.count},
                  {"cost", b.visit.cost},
                  {"factor", b.visit.factor},
                  {"group", b.visit.group},
                  {"benefit_kind", b.visit.benefit_kind},
                  {"cost_category", b.visit.cost_category},
                  {"total_amount", b.visit.total_amount},
                  {"billing_type", b.visit.billing_type},
                  {"performance_type", b.visit.performance_type}};
    j["label"] = b.label;
    return j;
}

[[noreturn]] void fail_line(size_t line_no, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

template <class T>
T require(const json& j, const char* field, size_t line_no) {
    if (!j.contains(field)) fail_line(line_no, std::string("missing field '") + field + "'");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        fail_line(line_no, std::string("field '") + field + "': wrong type");
    }
}

Bill bill_from_json(const json& j, size_t line_no) {
    Bill b;
    b.id = require<std::string>(j, "id", line_no);
    b.treatments = require<std::vector<std::string>>(j, "treatments", line_no);
    b.label = require<int>(j, "label", line_no);

    if (!j.contains("static")) fail_line(line_no, "missing field 'static'");
    const json& s = j.at("static");
    b.static_features.age = require<int>(s, "age", line_no);
    b.static_features.sex = require<int>(s, "sex", line_no);
    b.static_features.insurance_type = require<int>(s, "insurance_type", line_no);
    b.static_features.doctor_specialty = require<int>(s, "doctor_specialty", line_no);

    if (!j.contains("visit")) fail_line(line_no, "missing field 'visit'");
    const json& v = j.at("visit");
    b.visit.count = require<std::vector<int>>(v, "count", line_no);
    b.visit.cost = require<std::vector<double>>(v, "cost", line_no);
    b.visit.factor = require<std::vector<double>>(v, "factor", line_no);
    b.visit.group = require<std::vector<int>>(v, "group", line_no);
    b.visit.benefit_kind = require<std::vector<int>>(v, "benefit_kind", line_no);
    b.visit.cost_category = require<std::vector<int>>(v, "cost_category", line_no);
    b.visit.total_amount = require<double>(v, "total_amount", line_no);
    b.visit.billing_type = require<int>(v, "billing_type", line_no);
    b.visit.performance_type = require<int>(v, "performance_type", line_no);
    return b;
}

DatasetSchema infer_schema(const std::vector<Bill>& bills) {
    DatasetSchema s;  // defaults act as floors
    for (const auto& b : bills) {
        s.sex_card = std::max(s.sex_card, b.static_features.sex + 1);
        s.insurance_type_card = std::max(s.insurance_type_card, b.static_features.insurance_type + 1);
        s.doctor_specialty_card = std::max(s.doctor_specialty_card, b.static_features.doctor_specialty + 1);
        s.billing_type_card = std::max(s.billing_type_card, b.visit.billing_type + 1);
        s.performance_type_card = std::max(s.performance_type_card, b.visit.performance_type + 1);
        for (int g : b.visit.group) s.group_card = std::max(s.group_card, g + 1);
        for (int k : b.visit.benefit_kind) s.benefit_kind_card = std::max(s.benefit_kind_card, k + 1);
        for (int c : b.visit.cost_category) s.cost_category_card = std::max(s.cost_category_card, c + 1);
    }
    return s;
}

}  // namespace

std::string bill_to_json_line(const Bill& bill) { return bill_to_json(bill).dump(); }

void save_dataset(const Dataset& dataset, std::ostream& os) {
    for (const auto& b : dataset.bills) os << bill_to_json(b).dump() << '\n';
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    save_dataset(dataset, os);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

Dataset load_dataset(std::istream& is) {
    Dataset d;
    std::vector<size_t> bill_lines;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail_line(line_no, std::string("invalid JSON: ") + e.what());
        }
        d.bills.push_back(bill_from_json(j, line_no));
        if (!seen_ids.insert(d.bills.back().id).second)
            fail_line(line_no, "duplicate bill id '" + d.bills.back().id + "'");
        bill_lines.push_back(line_no);
    }
    d.schema = infer_schema(d.bills);
    for (size_t i = 0; i < d.bills.size(); ++i) {
        try {
            validate_bill(d.bills[i], d.schema);
        } catch (const std::invalid_argument& e) {
            fail_line(bill_lines[i], e.what());
        }
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    return load_dataset(is);
}

}  // namespace claimsentinel
