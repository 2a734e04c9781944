#include <benchmark/benchmark.h>

#include <random>

#include "qfm/feldman_moore.hpp"
#include "qfm/integer_cover.hpp"
#include "qfm/intset.hpp"
#include "qfm/relations.hpp"

namespace {

std::vector<qfm::Endomorphism> random_maps(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<qfm::Endomorphism> out(count, qfm::Endomorphism(n));
  for (auto& f : out) {
    for (auto& y : f) y = rng() % n;
  }
  return out;
}

qfm::Partition random_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = rng() % k;
  return qfm::Partition::from_labels(labels);
}

void BM_GenerateEquivalence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gens = random_maps(n, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(qfm::generate_equivalence(n, gens).partition().class_count());
}
BENCHMARK(BM_GenerateEquivalence)->Arg(16)->Arg(64)->Arg(256);

void BM_TailEquivalence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = random_maps(n, 1, 11)[0];
  for (auto _ : state) benchmark::DoNotOptimize(qfm::tail_equivalence(f).class_count());
}
BENCHMARK(BM_TailEquivalence)->Arg(64)->Arg(1024)->Arg(16384);

void BM_FmQuotient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto en = qfm::canonical_enumeration(random_partition(n, n / 3 + 1, 5));
  for (auto _ : state) benchmark::DoNotOptimize(qfm::fm_quotient(en).generators.size());
}
BENCHMARK(BM_FmQuotient)->Arg(8)->Arg(16)->Arg(32);

void BM_ClassicalFm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto e = random_partition(n, n / 3 + 1, 9);
  for (auto _ : state) benchmark::DoNotOptimize(qfm::classical_fm(e).generators.size());
}
BENCHMARK(BM_ClassicalFm)->Arg(8)->Arg(32)->Arg(128);

void BM_IntSetOps(benchmark::State& state) {
  const qfm::IntSet a = qfm::IntSet::residue_class(1, 6).unite(qfm::IntSet::interval(-500, 500));
  const qfm::IntSet b = qfm::IntSet::residue_class(2, 10).intersect(qfm::IntSet::ray_up(-80));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfm::intset_ops(a, b, qfm::SetOp::Difference));
    benchmark::DoNotOptimize(qfm::intset_ops(a, b, qfm::SetOp::Union));
  }
}
BENCHMARK(BM_IntSetOps);

void BM_IntegerCover(benchmark::State& state) {
  const qfm::IntSet z = qfm::IntSet::all();
  const qfm::IntegerRelation f = qfm::BlockPartition{z, {qfm::IntSet::ray_up(0)}};
  const auto g0 = qfm::PiecewiseTranslation::shift(qfm::IntSet::ray_up(0), 1);
  const std::vector<qfm::PiecewiseTranslation> psis{qfm::PiecewiseTranslation::identity(z)};
  for (auto _ : state) benchmark::DoNotOptimize(qfm::cover(f, g0, psis).ok());
}
BENCHMARK(BM_IntegerCover);

}  // namespace

BENCHMARK_MAIN();
