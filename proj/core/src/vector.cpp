#include "satdmine/vector.hpp"

#include <algorithm>
#include <cmath>

namespace satdmine {

CommentVector make_vector(std::string id, const std::map<std::uint32_t, double>& weights, std::size_t dimension) {
    CommentVector v;
    v.comment_id = std::move(id);
    v.dimension = dimension;
    double sq = 0.0;
    for (const auto& [index, w] : weights) {
        if (w == 0.0) continue;
        v.indices.push_back(index);
        v.values.push_back(w);
        sq += w * w;
    }
    v.norm = std::sqrt(sq);
    if (v.norm > 0.0) {
        for (double& x : v.values) x /= v.norm;
    }
    return v;
}

CommentVector make_dense_vector(std::string id, std::span<const double> values) {
    std::map<std::uint32_t, double> weights;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0) weights.emplace(static_cast<std::uint32_t>(i), values[i]);
    }
    return make_vector(std::move(id), weights, values.size());
}

double dot(const CommentVector& a, const CommentVector& b) noexcept {
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] < b.indices[j]) {
            ++i;
        } else if (b.indices[j] < a.indices[i]) {
            ++j;
        } else {
            sum += a.values[i] * b.values[j];
            ++i;
            ++j;
        }
    }
    return sum;
}

double cosine_similarity(const CommentVector& a, const CommentVector& b) noexcept {
    if (a.is_zero() || b.is_zero()) return 0.0;
    return std::clamp(dot(a, b), -1.0, 1.0);
}

}  // namespace satdmine
