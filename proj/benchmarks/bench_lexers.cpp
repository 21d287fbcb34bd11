#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "satdmine/comment_extraction.hpp"

using namespace satdmine;

namespace {

std::string build_file(std::size_t lines, const char* comment_prefix) {
    std::mt19937_64 rng(3);
    std::string out;
    for (std::size_t i = 0; i < lines; ++i) {
        switch (rng() % 4) {
            case 0: out += std::string(comment_prefix) + " TODO: tidy up target " + std::to_string(i) + "\n"; break;
            case 1: out += "set(VAR_" + std::to_string(i) + " \"value # not a comment\")\n"; break;
            case 2: out += "\n"; break;
            default: out += "add_library(lib" + std::to_string(i) + " src/a.c) " + comment_prefix + " trailing\n";
        }
    }
    return out;
}

std::string pom(std::size_t elements) {
    std::string out = "<project>\n";
    for (std::size_t i = 0; i < elements; ++i) {
        out += "  <!-- FIXME pin version " + std::to_string(i) + " -->\n  <dependency><artifactId>a" +
               std::to_string(i) + "</artifactId></dependency>\n";
    }
    return out + "</project>\n";
}

void BM_ExtractCmake(benchmark::State& state) {
    const auto content = build_file(static_cast<std::size_t>(state.range(0)), "#");
    const BuildFileRecord rec{"r", "CMakeLists.txt", BuildTool::Cmake, 0, 0};
    for (auto _ : state) benchmark::DoNotOptimize(extraction::extract_comments(rec, content));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * content.size()));
}
BENCHMARK(BM_ExtractCmake)->Arg(1000)->Arg(10000);

void BM_ExtractAutotools(benchmark::State& state) {
    const auto content = build_file(static_cast<std::size_t>(state.range(0)), "dnl");
    const BuildFileRecord rec{"r", "configure.ac", BuildTool::Autotools, 0, 0};
    for (auto _ : state) benchmark::DoNotOptimize(extraction::extract_comments(rec, content));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * content.size()));
}
BENCHMARK(BM_ExtractAutotools)->Arg(1000)->Arg(10000);

void BM_ExtractMaven(benchmark::State& state) {
    const auto content = pom(static_cast<std::size_t>(state.range(0)));
    const BuildFileRecord rec{"r", "pom.xml", BuildTool::Maven, 0, 0};
    for (auto _ : state) benchmark::DoNotOptimize(extraction::extract_comments(rec, content));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * content.size()));
}
BENCHMARK(BM_ExtractMaven)->Arg(500)->Arg(5000);

}  // namespace
