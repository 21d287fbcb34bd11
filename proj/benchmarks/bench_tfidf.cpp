#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "satdmine/clone_clustering.hpp"

using namespace satdmine;

namespace {

void BM_Tfidf(benchmark::State& state) {
    std::vector<clustering::PreprocessedComment> pre;
    for (const auto& c : bench::synthetic_comments(static_cast<std::size_t>(state.range(0)))) {
        pre.push_back(clustering::preprocess_text(c));
    }
    const clustering::TfidfVectorizer tfidf;
    for (auto _ : state) benchmark::DoNotOptimize(tfidf.vectorize(pre));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Tfidf)->Arg(1000)->Arg(10000);

}  // namespace
