#include "claimsentinel/embedding.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace claimsentinel {

EmbeddingMatrix make_embedding(std::size_t rows, std::size_t dim) {
    EmbeddingMatrix m;
    m.rows = rows;
    m.dim = dim;
    m.data.assign(rows * dim, 0.0);
    return m;
}

double cosine(const double* u, const double* v, std::size_t n) {
    double dot = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) throw std::invalid_argument("cosine: zero vector");
    return dot / (std::sqrt(uu) * std::sqrt(vv));
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("cosine: dimension mismatch");
    if (u.empty()) throw std::invalid_argument("cosine: zero vector");
    return cosine(u.data(), v.data(), u.size());
}

namespace {

void append_double(std::string& out, double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    out.append(buf, ptr);
}

}  // namespace

void save_embedding(const EmbeddingMatrix& matrix, const Vocabulary& vocab, const std::string& path) {
    if (matrix.rows != static_cast<std::size_t>(vocab.slot_count()))
        throw std::invalid_argument("save_embedding: row count does not match vocabulary");
    std::string body;
    body.reserve(matrix.rows * matrix.dim * 12);
    body += std::to_string(matrix.rows);
    body += ' ';
    body += std::to_string(matrix.dim);
    body += '\n';
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        body += r < vocab.tokens.size() ? vocab.tokens[r] : std::string("<oov>");
        const double* row = matrix.row(r);
        for (std::size_t j = 0; j < matrix.dim; ++j) {
            body += ' ';
            append_double(body, row[j]);
        }
        body += '\n';
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("save_embedding: cannot open '" + tmp + "'");
        out << body;
        if (!out) throw std::runtime_error("save_embedding: write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("save_embedding: rename to '" + path + "' failed");
}

LoadedEmbedding load_embedding(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_embedding: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("load_embedding: missing header line");
    std::istringstream hs(header);
    long long rows = 0, dim = 0;
    if (!(hs >> rows >> dim) || rows < 1 || dim < 1)
        throw std::runtime_error("load_embedding: malformed header '" + header + "'");

    LoadedEmbedding out;
    out.matrix = make_embedding(static_cast<std::size_t>(rows), static_cast<std::size_t>(dim));
    out.codes.reserve(static_cast<std::size_t>(rows));
    std::string line;
    for (long long r = 0; r < rows; ++r) {
        if (!std::getline(in, line))
            throw std::runtime_error("load_embedding: expected " + std::to_string(rows) + " rows, got " +
                                     std::to_string(r));
        std::istringstream ls(line);
        std::string code;
        if (!(ls >> code)) throw std::runtime_error("load_embedding: empty row " + std::to_string(r + 2));
        out.codes.push_back(code);
        double* dst = out.matrix.row(static_cast<std::size_t>(r));
        for (long long j = 0; j < dim; ++j) {
            std::string field;
            if (!(ls >> field))
                throw std::runtime_error("load_embedding: row '" + code + "' has fewer than " +
                                         std::to_string(dim) + " values");
            char* end = nullptr;
            dst[j] = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0')
                throw std::runtime_error("load_embedding: bad number '" + field + "' in row '" + code + "'");
            if (!std::isfinite(dst[j]))
                throw std::runtime_error("load_embedding: non-finite value in row '" + code + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("load_embedding: row '" + code + "' has more than " + std::to_string(dim) +
                                     " values");
    }
    return out;
}

}  // namespace claimsentinel
