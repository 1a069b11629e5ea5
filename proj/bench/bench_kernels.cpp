// Compares the OpenMP kernels against their serial reference twins on
// fixed workloads and reports wall times and speedups.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "paracirc/families.hpp"
#include "paracirc/kernels.hpp"
#include "paracirc/ratm_compile.hpp"
#include "paracirc/transforms.hpp"

using namespace paracirc;

namespace {

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
  double t0 = now();
  f();
  return now() - t0;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %5.2fx   %s\n", name,
              serial * 1e3, parallel * 1e3, serial / parallel,
              equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    // truth table of a layered simulation over the equality family at n = 12
    auto fam = builtin("fig1-equality");
    std::uint64_t n = 12, k = isqrt(n);
    simgate_layout layout;
    layout.d = required_layers(materialize(*fam.oracle, n, k));
    layout.n_simgates = fam.oracle->numbering_bound(n, k);
    materialize_limits lim;
    lim.max_gates = 1ull << 18;
    circuit c = build_simgate_family(*fam.oracle, n, k, layout, lim);
    std::printf("simgate circuit: %zu gates, %llu inputs\n", c.gates.size(),
                (unsigned long long)c.n_inputs);
    std::vector<std::uint8_t> a, b;
    double ts = timed([&] { a = kernels::truth_table_serial(c); });
    double tp = timed([&] { b = kernels::truth_table(c); });
    report("truth_table", ts, tp, a == b);
  }

  {
    // compiled random-access machine, truth table at n = 14
    circuit c = compile_ratm(builtin_machine("two-query-and"), 6, 14);
    std::printf("compiled circuit: %zu gates\n", c.gates.size());
    std::vector<std::uint8_t> a, b;
    double ts = timed([&] { a = kernels::truth_table_serial(c); });
    double tp = timed([&] { b = kernels::truth_table(c); });
    report("truth_table (compiled)", ts, tp, a == b);
  }

  {
    // branch simulations behind the compiler at t = 8
    auto m = builtin_machine("two-query-and");
    std::vector<kernels::branch_outcome> a, b;
    double ts = timed([&] { a = kernels::simulate_branches_serial(m, 8); });
    double tp = timed([&] { b = kernels::simulate_branches(m, 8); });
    bool equal = a.size() == b.size();
    for (std::size_t i = 0; equal && i < a.size(); ++i)
      equal = a[i].accept == b[i].accept && a[i].addresses == b[i].addresses;
    report("simulate_branches", ts, tp, equal);
  }

  {
    // batched word deciding on the equality family at (10, 3)
    auto fam = builtin("fig1-equality");
    auto words = enumerate_direct_words(*fam.oracle, 10, 3);
    std::vector<bitstring> batch;
    for (int rep = 0; rep < 200; ++rep)
      for (const auto& f : fuzz_words(words, 500, 1000 + rep)) batch.push_back(f);
    std::printf("word batch: %zu words\n", batch.size());
    std::vector<std::uint8_t> a, b;
    double ts = timed([&] { a = kernels::decide_direct_batch_serial(*fam.oracle, batch); });
    double tp = timed([&] { b = kernels::decide_direct_batch(*fam.oracle, batch); });
    report("decide_direct_batch", ts, tp, a == b);
  }

  return 0;
}
