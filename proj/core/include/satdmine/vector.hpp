#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace satdmine {

// Sparse real vector keyed to one comment (or statement block). Values are
// L2-normalized whenever `norm` > 0; `norm` keeps the length before
// normalization. Indices are strictly increasing.
struct CommentVector {
    std::string comment_id;
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
    std::size_t dimension = 0;
    double norm = 0.0;

    bool is_zero() const noexcept { return norm == 0.0; }
};

// Builds a normalized vector from (index -> weight); zero weights dropped.
CommentVector make_vector(std::string id, const std::map<std::uint32_t, double>& weights, std::size_t dimension);
CommentVector make_dense_vector(std::string id, std::span<const double> values);

double dot(const CommentVector& a, const CommentVector& b) noexcept;

// Cosine similarity of two normalized vectors, clamped to [-1, 1]; 0 when
// either is the zero vector.
double cosine_similarity(const CommentVector& a, const CommentVector& b) noexcept;

inline double cosine_distance(const CommentVector& a, const CommentVector& b) noexcept {
    return 1.0 - cosine_similarity(a, b);
}

}  // namespace satdmine
