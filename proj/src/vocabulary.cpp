#include "claimsentinel/vocabulary.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "claimsentinel/rng.hpp"

namespace claimsentinel {

uint64_t Vocabulary::content_hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<uint64_t>(min_count));
    for (size_t i = 0; i < tokens.size(); ++i) {
        mix(fnv1a64(tokens[i]));
        mix(static_cast<uint64_t>(counts[i]));
    }
    return h;
}

Vocabulary build_vocabulary(const std::vector<Bill>& bills, int min_count) {
    if (min_count < 1) throw std::invalid_argument("build_vocabulary: min_count must be >= 1");

    std::unordered_map<std::string, long long> freq;
    for (const auto& bill : bills)
        for (const auto& t : bill.treatments) ++freq[t];

    std::vector<std::pair<std::string, long long>> retained;
    retained.reserve(freq.size());
    for (const auto& [code, n] : freq)
        if (n >= min_count) retained.emplace_back(code, n);

    std::sort(retained.begin(), retained.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary v;
    v.min_count = min_count;
    v.tokens.reserve(retained.size());
    v.counts.reserve(retained.size());
    for (const auto& [code, n] : retained) {
        v.index.emplace(code, static_cast<int>(v.tokens.size()));
        v.tokens.push_back(code);
        v.counts.push_back(n);
    }
    v.oov_index = static_cast<int>(v.tokens.size());
    return v;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
    std::string body = "min_count " + std::to_string(vocab.min_count) + "\n";
    for (size_t i = 0; i < vocab.tokens.size(); ++i)
        body += vocab.tokens[i] + " " + std::to_string(vocab.counts[i]) + "\n";
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("save_vocabulary: cannot open '" + tmp + "'");
        out << body;
        if (!out) throw std::runtime_error("save_vocabulary: write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("save_vocabulary: rename to '" + path + "' failed");
}

Vocabulary load_vocabulary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_vocabulary: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_vocabulary: '" + path + "' is empty");
    Vocabulary v;
    {
        std::istringstream hs(line);
        std::string word;
        if (!(hs >> word >> v.min_count) || word != "min_count" || v.min_count < 1)
            throw std::runtime_error("load_vocabulary: malformed header in '" + path + "'");
    }
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string code;
        long long count = 0;
        if (!(ls >> code >> count) || count < 1)
            throw std::runtime_error("load_vocabulary: malformed line " + std::to_string(line_no) + " in '" +
                                     path + "'");
        if (!v.index.emplace(code, static_cast<int>(v.tokens.size())).second)
            throw std::runtime_error("load_vocabulary: duplicate token '" + code + "' in '" + path + "'");
        v.tokens.push_back(code);
        v.counts.push_back(count);
    }
    v.oov_index = static_cast<int>(v.tokens.size());
    return v;
}

}  // namespace claimsentinel
