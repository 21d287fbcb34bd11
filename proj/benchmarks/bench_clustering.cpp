#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "satdmine/clone_clustering.hpp"

using namespace satdmine;

namespace {

std::vector<CommentVector> vectors(std::size_t n) {
    std::vector<clustering::PreprocessedComment> pre;
    for (const auto& c : bench::synthetic_comments(n)) pre.push_back(clustering::preprocess_text(c));
    return clustering::TfidfVectorizer().vectorize(pre);
}

void BM_SimilarityGate(benchmark::State& state) {
    const auto v = vectors(static_cast<std::size_t>(state.range(0)));
    const clustering::SimilarityOptions opts{static_cast<std::size_t>(state.range(1)), true};
    for (auto _ : state) benchmark::DoNotOptimize(clustering::similarity_gate(v, 0.8, opts));
}
BENCHMARK(BM_SimilarityGate)->Args({2000, 1})->Args({2000, 4})->Args({10000, 4});

void BM_SimilarityGateNoIndex(benchmark::State& state) {
    const auto v = vectors(static_cast<std::size_t>(state.range(0)));
    const clustering::SimilarityOptions opts{1, false};
    for (auto _ : state) benchmark::DoNotOptimize(clustering::similarity_gate(v, 0.8, opts));
}
BENCHMARK(BM_SimilarityGateNoIndex)->Arg(2000);

void BM_Cluster(benchmark::State& state) {
    const auto v = vectors(static_cast<std::size_t>(state.range(0)));
    const clustering::ClusteringConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(clustering::cluster(v, cfg));
}
BENCHMARK(BM_Cluster)->Arg(2000)->Arg(10000);

}  // namespace
