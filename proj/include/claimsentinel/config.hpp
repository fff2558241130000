#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace claimsentinel {

// Bad or unknown configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat sectioned key=value text:
//
//   # comment
//   [generator]
//   n_bills = 20000
//   fraud_rate = 0.02
//
// Lookups mark keys as consumed; finish() rejects anything left over, so a
// typo fails loudly instead of silently using a default.
class Config {
public:
    static Config load(const std::string& path);
    static Config parse(const std::string& text, const std::string& origin);

    bool has(const std::string& section, const std::string& key) const;

    std::string require_str(const std::string& section, const std::string& key);
    std::string get_str(const std::string& section, const std::string& key, const std::string& fallback);
    long long get_int(const std::string& section, const std::string& key, long long fallback);
    double get_double(const std::string& section, const std::string& key, double fallback);
    bool get_bool(const std::string& section, const std::string& key, bool fallback);
    std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback);
    std::vector<long long> get_int_list(const std::string& section, const std::string& key,
                                        const std::vector<long long>& fallback);
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback);

    // Throws ConfigError naming every key nothing asked for.
    void finish() const;

    // (section, key) of every entry no lookup has touched yet.
    std::vector<std::pair<std::string, std::string>> unconsumed() const;

private:
    struct Entry {
        std::string section, key, value;
        std::size_t line = 0;
        bool consumed = false;
    };
    Entry* find(const std::string& section, const std::string& key);
    const Entry* find(const std::string& section, const std::string& key) const;

    std::string origin_;
    std::vector<Entry> entries_;
};

}  // namespace claimsentinel
