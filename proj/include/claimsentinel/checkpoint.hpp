#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace claimsentinel {

// Versioned text container for model state. Reals are stored as C hexfloats,
// so parameter round-trips are bit-exact. Entries are typed name/value pairs;
// order on disk is the write order, lookup is by name.
//
//   claimsentinel-checkpoint 1
//   kind gbdt
//   u64 seed 42
//   f64 learning_rate 0x1.999999999999ap-4
//   str objective logistic
//   vec tree0_values 3 0x1p+0 0x0p+0 0x1.8p+1
class CheckpointWriter {
public:
    explicit CheckpointWriter(std::string kind);

    void put_u64(const std::string& name, std::uint64_t value);
    void put_i64(const std::string& name, std::int64_t value);
    void put_f64(const std::string& name, double value);
    void put_str(const std::string& name, const std::string& value);  // no whitespace/newlines
    void put_vec(const std::string& name, const std::vector<double>& values);

    // Atomic: writes to "<path>.tmp" then renames.
    void write(const std::string& path) const;

private:
    void claim(const std::string& name);
    std::string body_;
    std::map<std::string, char> used_;
};

class CheckpointReader {
public:
    CheckpointReader(const std::string& path, const std::string& expected_kind);

    std::uint64_t get_u64(const std::string& name) const;
    std::int64_t get_i64(const std::string& name) const;
    double get_f64(const std::string& name) const;
    std::string get_str(const std::string& name) const;
    std::vector<double> get_vec(const std::string& name) const;

private:
    struct Entry {
        char type;  // 'u', 'i', 'f', 's', 'v'
        std::string scalar;
        std::vector<double> vec;
    };
    const Entry& find(const std::string& name, char type) const;
    std::string path_;
    std::map<std::string, Entry> entries_;
};

}  // namespace claimsentinel
