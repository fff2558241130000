#include "claimsentinel/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace claimsentinel {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": malformed section header '" + t +
                                  "'");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value', got '" + t +
                              "'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": key '" + key +
                              "' appears before any [section]");
        for (const Entry& e : cfg.entries_)
            if (e.section == section && e.key == key)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + section + "." +
                                  key + "' (first at line " + std::to_string(e.line) + ")");
        cfg.entries_.push_back({section, key, value, line_no, false});
    }
    return cfg;
}

Config::Entry* Config::find(const std::string& section, const std::string& key) {
    for (Entry& e : entries_)
        if (e.section == section && e.key == key) return &e;
    return nullptr;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    for (const Entry& e : entries_)
        if (e.section == section && e.key == key) return &e;
    return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string Config::require_str(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) throw ConfigError(origin_ + ": missing required key '" + section + "." + key + "'");
    e->consumed = true;
    return e->value;
}

std::string Config::get_str(const std::string& section, const std::string& key, const std::string& fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    return e->value;
}

namespace {

long long parse_int(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw ConfigError(where + ": '" + value + "' is not an integer");
    return v;
}

double parse_real(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw ConfigError(where + ": '" + value + "' is not a number");
    return v;
}

}  // namespace

long long Config::get_int(const std::string& section, const std::string& key, long long fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    return parse_int(e->value, origin_ + ": " + section + "." + key);
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    return parse_real(e->value, origin_ + ": " + section + "." + key);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError(origin_ + ": " + section + "." + key + ": '" + e->value + "' is not a boolean");
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    const std::string where = origin_ + ": " + section + "." + key;
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
    if (errno != 0 || end == e->value.c_str() || *end != '\0' || e->value[0] == '-')
        throw ConfigError(where + ": '" + e->value + "' is not an unsigned integer");
    return v;
}

std::vector<long long> Config::get_int_list(const std::string& section, const std::string& key,
                                            const std::vector<long long>& fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    std::vector<long long> out;
    for (const std::string& item : split_list(e->value))
        out.push_back(parse_int(item, origin_ + ": " + section + "." + key));
    if (out.empty()) throw ConfigError(origin_ + ": " + section + "." + key + ": empty list");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& section, const std::string& key,
                                            const std::vector<double>& fallback) {
    Entry* e = find(section, key);
    if (!e) return fallback;
    e->consumed = true;
    std::vector<double> out;
    for (const std::string& item : split_list(e->value))
        out.push_back(parse_real(item, origin_ + ": " + section + "." + key));
    if (out.empty()) throw ConfigError(origin_ + ": " + section + "." + key + ": empty list");
    return out;
}

void Config::finish() const {
    std::string unknown;
    for (const Entry& e : entries_)
        if (!e.consumed) {
            if (!unknown.empty()) unknown += ", ";
            unknown += e.section + "." + e.key + " (line " + std::to_string(e.line) + ")";
        }
    if (!unknown.empty()) throw ConfigError(origin_ + ": unknown keys: " + unknown);
}

std::vector<std::pair<std::string, std::string>> Config::unconsumed() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Entry& e : entries_)
        if (!e.consumed) out.emplace_back(e.section, e.key);
    return out;
}

}  // namespace claimsentinel
