// Benchmark for the two parallel kernels — algebra enumeration and the rule
// soundness sweep — comparing the serial reference path (--jobs 1) with the
// OpenMP path (all threads).  Besides the timings it cross-checks that both
// paths produce identical results, which is what the test suite relies on.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>

#include "CLI11.hpp"

#include "roughproof/algebra.hpp"
#include "roughproof/rules.hpp"

#ifdef ROUGHPROOF_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

double time_best(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel comparison"};
  int size = 7;
  int repeats = 3;
  app.add_option("--size", size, "carrier bound (default 7)");
  app.add_option("--repeats", repeats, "repetitions per measurement, best is kept");
  CLI11_PARSE(app, argc, argv);

#ifdef ROUGHPROOF_HAVE_OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP; both paths are serial)\n";
#endif

  bool identical = true;

  // --- enumeration ---
  rp::EnumOptions serial_opt, parallel_opt;
  serial_opt.max_size = parallel_opt.max_size = size;
  serial_opt.cls = parallel_opt.cls = rp::AlgClass::tqBa;
  serial_opt.jobs = 1;
  parallel_opt.jobs = 0;

  std::vector<rp::SingleAlgebra> serial_algs, parallel_algs;
  const double enum_serial =
      time_best(repeats, [&] { serial_algs = rp::enumerate_algebras(serial_opt); });
  const double enum_parallel =
      time_best(repeats, [&] { parallel_algs = rp::enumerate_algebras(parallel_opt); });

  bool enum_same = serial_algs.size() == parallel_algs.size();
  for (size_t i = 0; enum_same && i < serial_algs.size(); ++i)
    enum_same = rp::canonical_key(serial_algs[i]) == rp::canonical_key(parallel_algs[i]);
  identical = identical && enum_same;

  std::cout << "enumerate serial:   " << enum_serial << "s (" << serial_algs.size()
            << " algebras)\n"
            << "enumerate parallel: " << enum_parallel << "s\n"
            << "enumerate speedup:  " << enum_serial / enum_parallel
            << "x, identical results: " << (enum_same ? "yes" : "NO") << "\n";

  // --- soundness sweep ---
  rp::SweepResult sweep_serial_r, sweep_parallel_r;
  const double sweep_serial = time_best(
      repeats, [&] { sweep_serial_r = rp::soundness_sweep(rp::CalculusId::TQBA, size, 1); });
  const double sweep_parallel = time_best(
      repeats, [&] { sweep_parallel_r = rp::soundness_sweep(rp::CalculusId::TQBA, size, 0); });

  const bool sweep_same = sweep_serial_r.checks == sweep_parallel_r.checks &&
                          sweep_serial_r.algebras == sweep_parallel_r.algebras &&
                          sweep_serial_r.violations == sweep_parallel_r.violations;
  identical = identical && sweep_same;

  std::cout << "sweep serial:       " << sweep_serial << "s (" << sweep_serial_r.checks
            << " checks)\n"
            << "sweep parallel:     " << sweep_parallel << "s\n"
            << "sweep speedup:      " << sweep_serial / sweep_parallel
            << "x, identical results: " << (sweep_same ? "yes" : "NO") << "\n";

  std::cout << "RESULT: " << (identical ? "ok" : "mismatch") << "\n";
  return identical ? 0 : 1;
}
