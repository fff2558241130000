#include "claimsentinel/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace claimsentinel {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename to '" + path + "' failed");
}

namespace {

bool needs_quoting(const std::string& field) {
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
    return false;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    if (header.empty()) throw std::invalid_argument("csv: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) content_ += ',';
        append_field(content_, header[i]);
    }
    content_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& fields) {
    if (fields.size() != width_)
        throw std::invalid_argument("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                                    std::to_string(width_));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) content_ += ',';
        append_field(content_, fields[i]);
    }
    content_ += '\n';
}

}  // namespace claimsentinel
