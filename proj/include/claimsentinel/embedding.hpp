#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

// Row-major token embedding table, one row per vocabulary slot (retained
// tokens followed by the OOV slot).
struct EmbeddingMatrix {
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<double> data;  // rows * dim

    double* row(std::size_t r) { return data.data() + r * dim; }
    const double* row(std::size_t r) const { return data.data() + r * dim; }

    bool operator==(const EmbeddingMatrix&) const = default;
};

EmbeddingMatrix make_embedding(std::size_t rows, std::size_t dim);

double cosine(const std::vector<double>& u, const std::vector<double>& v);
double cosine(const double* u, const double* v, std::size_t n);

// Text format: first line "<rows> <dim>", then one line per row: the token
// code followed by dim decimal reals. The last row is the reserved "<oov>"
// code. Values round-trip exactly (shortest round-trip formatting).
void save_embedding(const EmbeddingMatrix& matrix, const Vocabulary& vocab, const std::string& path);

struct LoadedEmbedding {
    EmbeddingMatrix matrix;
    std::vector<std::string> codes;  // includes trailing "<oov>"
};

LoadedEmbedding load_embedding(const std::string& path);

}  // namespace claimsentinel
