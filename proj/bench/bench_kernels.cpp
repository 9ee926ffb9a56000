// Serial vs OpenMP timings for the enumeration kernels.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "slrc/arraycodes.hpp"
#include "slrc/lrc.hpp"
#include "slrc/rng.hpp"
#include "slrc/secrecy.hpp"

using namespace slrc;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, int reps, const std::function<bool()>& serial, const std::function<bool()>& parallel) {
  bool agree = true;
  const double ts = best_of(reps, [&] { agree &= serial(); });
  const double tp = best_of(reps, [&] { agree &= parallel(); });
  std::printf("%-40s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), ts, tp, ts / tp, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmarks"};
  int reps = 3;
  int threads = 0;
  app.add_option("--reps", reps, "repetitions; the best time is reported");
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-40s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  const ZigzagSpec zz = make_zigzag(4, 3, 5);
  const auto zz_expect = mds_witness_serial(*zz.code);
  row("mds_witness zigzag (7,4), alpha 81", reps, [&] { return mds_witness_serial(*zz.code) == zz_expect; },
      [&] { return mds_witness(*zz.code) == zz_expect; });

  const LrcSpec mds15 = build_lrc(15, 3, 3, 4, 28, 5, InnerKind::Mds);
  row("measure_dmin (15,28,3,3,4)", reps, [&] { return measure_dmin_serial(mds15) == 5; },
      [&] { return measure_dmin(mds15) == 5; });

  const auto msg = random_elements(mds15.tower(), 28, 1);
  const ShardSet sh = lrc_encode(mds15, msg);
  row("decode_erasure_patterns 3 of 15", reps,
      [&] { return decode_erasure_patterns_serial(mds15, sh, msg, 3) == 455; },
      [&] { return decode_erasure_patterns(mds15, sh, msg, 3) == 455; });

  const SecureSpec sec = make_secure_msr_lrc(15, 3, 3, 4, 28, 1, 1, 5, 3);
  const auto family = admissible_patterns(sec, true);
  row("secrecy_sweep MSR-LRC (1,1), " + std::to_string(family.size()) + " patterns", reps,
      [&] { return secrecy_sweep_serial(sec, family).max_leakage == 0; },
      [&] { return secrecy_sweep(sec, family).max_leakage == 0; });
  return 0;
}
