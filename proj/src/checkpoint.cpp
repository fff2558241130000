#include "claimsentinel/checkpoint.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace claimsentinel {

namespace {

constexpr const char* kMagic = "claimsentinel-checkpoint";
constexpr int kVersion = 1;

std::string hexfloat(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_hexfloat(const std::string& s, const std::string& where) {
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("checkpoint: bad real '" + s + "' in " + where);
    return x;
}

void check_name(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("checkpoint: empty entry name");
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("checkpoint: entry name '" + name + "' contains whitespace");
}

}  // namespace

CheckpointWriter::CheckpointWriter(std::string kind) {
    check_name(kind);
    body_ = std::string(kMagic) + " " + std::to_string(kVersion) + "\nkind " + kind + "\n";
}

void CheckpointWriter::claim(const std::string& name) {
    check_name(name);
    if (!used_.emplace(name, 1).second)
        throw std::invalid_argument("checkpoint: duplicate entry '" + name + "'");
}

void CheckpointWriter::put_u64(const std::string& name, std::uint64_t value) {
    claim(name);
    body_ += "u64 " + name + " " + std::to_string(value) + "\n";
}

void CheckpointWriter::put_i64(const std::string& name, std::int64_t value) {
    claim(name);
    body_ += "i64 " + name + " " + std::to_string(value) + "\n";
}

void CheckpointWriter::put_f64(const std::string& name, double value) {
    claim(name);
    body_ += "f64 " + name + " " + hexfloat(value) + "\n";
}

void CheckpointWriter::put_str(const std::string& name, const std::string& value) {
    claim(name);
    if (value.empty()) throw std::invalid_argument("checkpoint: empty string value for '" + name + "'");
    for (char c : value)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("checkpoint: string value for '" + name + "' contains whitespace");
    body_ += "str " + name + " " + value + "\n";
}

void CheckpointWriter::put_vec(const std::string& name, const std::vector<double>& values) {
    claim(name);
    body_ += "vec " + name + " " + std::to_string(values.size());
    for (double x : values) {
        body_ += ' ';
        body_ += hexfloat(x);
    }
    body_ += '\n';
}

void CheckpointWriter::write(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("checkpoint: cannot open '" + tmp + "'");
        out << body_;
        if (!out) throw std::runtime_error("checkpoint: write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("checkpoint: rename to '" + path + "' failed");
}

CheckpointReader::CheckpointReader(const std::string& path, const std::string& expected_kind) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: '" + path + "' is empty");
    {
        std::istringstream hs(line);
        std::string magic;
        int version = 0;
        if (!(hs >> magic >> version) || magic != kMagic)
            throw std::runtime_error("checkpoint: '" + path + "' is not a checkpoint file");
        if (version != kVersion)
            throw std::runtime_error("checkpoint: '" + path + "' has unsupported version " +
                                     std::to_string(version));
    }
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: '" + path + "' missing kind line");
    {
        std::istringstream ks(line);
        std::string word, kind;
        if (!(ks >> word >> kind) || word != "kind")
            throw std::runtime_error("checkpoint: '" + path + "' missing kind line");
        if (kind != expected_kind)
            throw std::runtime_error("checkpoint: '" + path + "' holds a '" + kind + "' model, expected '" +
                                     expected_kind + "'");
    }

    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string type, name;
        if (!(ls >> type >> name))
            throw std::runtime_error("checkpoint: malformed line " + std::to_string(line_no) + " in '" + path +
                                     "'");
        std::string where = "'" + path + "' line " + std::to_string(line_no);
        Entry entry;
        if (type == "u64" || type == "i64" || type == "f64" || type == "str") {
            entry.type = type == "str" ? 's' : type[0];
            if (!(ls >> entry.scalar))
                throw std::runtime_error("checkpoint: missing value at " + where);
        } else if (type == "vec") {
            entry.type = 'v';
            std::size_t count = 0;
            if (!(ls >> count)) throw std::runtime_error("checkpoint: missing vector length at " + where);
            entry.vec.reserve(count);
            std::string field;
            for (std::size_t i = 0; i < count; ++i) {
                if (!(ls >> field))
                    throw std::runtime_error("checkpoint: vector '" + name + "' truncated at " + where);
                entry.vec.push_back(parse_hexfloat(field, where));
            }
        } else {
            throw std::runtime_error("checkpoint: unknown entry type '" + type + "' at " + where);
        }
        std::string extra;
        if (ls >> extra) throw std::runtime_error("checkpoint: trailing data at " + where);
        if (!entries_.emplace(name, std::move(entry)).second)
            throw std::runtime_error("checkpoint: duplicate entry '" + name + "' at " + where);
    }
}

const CheckpointReader::Entry& CheckpointReader::find(const std::string& name, char type) const {
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw std::runtime_error("checkpoint: '" + path_ + "' has no entry '" + name + "'");
    if (it->second.type != type)
        throw std::runtime_error("checkpoint: entry '" + name + "' in '" + path_ + "' has unexpected type");
    return it->second;
}

std::uint64_t CheckpointReader::get_u64(const std::string& name) const {
    const Entry& e = find(name, 'u');
    return std::stoull(e.scalar);
}

std::int64_t CheckpointReader::get_i64(const std::string& name) const {
    const Entry& e = find(name, 'i');
    return std::stoll(e.scalar);
}

double CheckpointReader::get_f64(const std::string& name) const {
    const Entry& e = find(name, 'f');
    return parse_hexfloat(e.scalar, "entry '" + name + "'");
}

std::string CheckpointReader::get_str(const std::string& name) const { return find(name, 's').scalar; }

std::vector<double> CheckpointReader::get_vec(const std::string& name) const { return find(name, 'v').vec; }

}  // namespace claimsentinel
