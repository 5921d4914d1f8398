// Times the OpenMP kernels against their serial reference paths on three
// representative workloads. Results are wall-clock only; correctness of
// the two paths against each other is covered by tests/test_parallel.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ysys/cluster.hpp"
#include "ysys/dilog.hpp"
#include "ysys/parallel.hpp"
#include "ysys/tropical.hpp"
#include "ysys/wedge.hpp"

namespace {

using ysys::par::Exec;

double seconds(void (*work)(Exec), Exec exec, int reps) {
  using clock = std::chrono::steady_clock;
  work(exec);  // warm-up
  const auto start = clock::now();
  for (int r = 0; r < reps; ++r) work(exec);
  return std::chrono::duration<double>(clock::now() - start).count() / reps;
}

void numeric_sweep(Exec exec) {
  auto pair = ysys::cluster::parse_pair("D4xA2");
  ysys::dilog::verify_identities(pair, 64, 1e-8, 1, exec);
}

void tropical_sweep(Exec exec) {
  for (const char* spec : {"A4xA4", "D5xA3", "E6xA2", "D4xD4", "A5xA3"}) {
    auto pair = ysys::cluster::parse_pair(spec);
    ysys::tropical::sign_counts(pair, exec);
    ysys::tropical::verify_dvector_factorization(pair, exec);
  }
}

void wedge_sweep(Exec exec) {
  auto pair = ysys::cluster::parse_pair("A3xA2");
  ysys::wedge::wedge_vanishing(pair, 6, exec);
}

void report(const char* name, void (*work)(Exec), int reps) {
  const double serial = seconds(work, Exec::serial, reps);
  const double openmp = seconds(work, Exec::openmp, reps);
  std::printf("%-22s serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n", name,
              serial * 1e3, openmp * 1e3, serial / openmp);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", ysys::par::max_threads());
  report("numeric identities", numeric_sweep, 3);
  report("tropical sweeps", tropical_sweep, 3);
  report("wedge expansion", wedge_sweep, 3);
  return 0;
}
