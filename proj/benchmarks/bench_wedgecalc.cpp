#include <benchmark/benchmark.h>

#include <wedgecalc/calculus.hpp>
#include <wedgecalc/classify.hpp>
#include <wedgecalc/normalize.hpp>
#include <wedgecalc/oracle.hpp>
#include <wedgecalc/parser.hpp>
#include <wedgecalc/selfmap.hpp>

using namespace wedgecalc;

namespace {

// a fixed scrambled rank-3 attaching map, shared by several benchmarks
const char* kScrambledK3 =
    "W(i(3,1),i(5,2)) + W(i(3,2),i(5,3)) + W(i(3,3),i(5,1)) + W(i(3,1),i(5,1)) "
    "+ 2*W3(1,1,2) - W3(2,1,3) + W(i(3,1),i(3,2)).eta2 + i(3,2).nu'eta + i(5,1).eta2";

Element scrambled(const ShapePtr& sh) { return parse_element(kScrambledK3, sh, 7); }

void BM_parse(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 3);
    for (auto _ : state) benchmark::DoNotOptimize(parse_element(kScrambledK3, sh, 7));
}
BENCHMARK(BM_parse);

void BM_print(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 3);
    Element e = scrambled(sh);
    for (auto _ : state) benchmark::DoNotOptimize(to_string(e));
}
BENCHMARK(BM_print);

void BM_apply_move(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 3);
    Element e = scrambled(sh);
    RandomSource rnd(11);
    SelfMap f = random_classifier_move(sh, rnd);
    for (auto _ : state) benchmark::DoNotOptimize(apply(f, e));
}
BENCHMARK(BM_apply_move);

void BM_whitehead(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 3);
    Element a = parse_element("i(3,1) + 2*i(3,2) - i(3,3)", sh);
    Element b = parse_element("i(5,1) - i(5,3)", sh);
    for (auto _ : state) benchmark::DoNotOptimize(whitehead(a, b));
}
BENCHMARK(BM_whitehead);

void BM_normalize(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, static_cast<int>(state.range(0)));
    RandomSource rnd(23);
    IntMat m = random_unimodular(static_cast<int>(state.range(0)), rnd);
    Element e = random_classifier_element(sh, m, rnd);
    for (auto _ : state) benchmark::DoNotOptimize(normalize_attaching_map(e));
}
BENCHMARK(BM_normalize)->Arg(2)->Arg(4)->Arg(6);

void BM_classify(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 3);
    Element e = scrambled(sh);
    for (auto _ : state) benchmark::DoNotOptimize(canonicalize(e));
}
BENCHMARK(BM_classify);

void BM_equiv_separated(benchmark::State& state) {
    auto sh = WedgeShape::classifier(4, 2);
    Element a = parse_element("W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(3,1).nu'eta", sh, 7);
    Element b = parse_element("W(i(3,1),i(5,1)) + W(i(3,2),i(5,2)) + i(5,1).eta2", sh, 7);
    for (auto _ : state) benchmark::DoNotOptimize(equivalent(a, b));
}
BENCHMARK(BM_equiv_separated);

void BM_split(benchmark::State& state) {
    auto sh = WedgeShape::splitter(4, 2, 2);
    // K2 intersection block [[1,1],[1,2]], det 1
    Element e = parse_element("i(3,1).nu'eta + i(4,1).b + 2*i(4,2).b + W(i(4,1),i(4,2)) "
                              "+ W(i(3,1),i(4,2)).eta + W(i(3,2),i(4,1)).eta",
                              sh, 7);
    for (auto _ : state) benchmark::DoNotOptimize(split_connected_sum(e));
}
BENCHMARK(BM_split);

void BM_smith(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    RandomSource rnd(31);
    IntMat q = random_unimodular(k, rnd), p = random_unimodular(k, rnd);
    IntMat d = IntMat::identity(k);
    for (int i = 0; i < k; ++i) d.at(i, i) = 1 + 2 * i;
    IntMat m = mul(mul(q, d), p);
    for (auto _ : state) benchmark::DoNotOptimize(smith_invariants(m));
}
BENCHMARK(BM_smith)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
