// Wall-clock comparison of the serial reference paths (jobs = 1) against the
// OpenMP kernels (jobs = N) on the three heavy loops: the norm table, a
// discriminant range check, and the supersingular census. Fresh in-memory
// caches per run so both sides do the same work.

#include "cmnorm/analysis.hpp"
#include "cmnorm/ffcurves.hpp"
#include "cmnorm/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace cmnorm;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, int jobs) {
  std::printf("%-28s serial %9.1f ms   jobs=%d %9.1f ms   speedup %.2fx\n", name, serial_ms,
              jobs, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial reference vs OpenMP kernel timings"};
  long long f_max = 40;
  long long d_max = 600;
  int census_p = 13;
  int jobs = hardware_jobs();
  app.add_option("--f-max", f_max, "norm table size");
  app.add_option("--d-max", d_max, "range check bound");
  app.add_option("--census-p", census_p, "census characteristic");
  app.add_option("--jobs", jobs, "parallel worker count");
  CLI11_PARSE(app, argc, argv);

  std::printf("hardware threads: %d, comparing jobs=1 against jobs=%d\n", hardware_jobs(), jobs);

  {
    // Separate caches: a shared one would let the second run ride the first.
    HilbertCache serial_cache(""), parallel_cache("");
    double s = time_ms([&] { norm_table(f_max, &serial_cache, 1); });
    double p = time_ms([&] { norm_table(f_max, &parallel_cache, jobs); });
    report("norm table", s, p, jobs);
  }
  {
    HilbertCache serial_cache(""), parallel_cache("");
    double s = time_ms([&] { check_mod3_obstruction(d_max, &serial_cache, 1); });
    double p = time_ms([&] { check_mod3_obstruction(d_max, &parallel_cache, jobs); });
    report("mod3 range check", s, p, jobs);
  }
  {
    double s = time_ms([&] { ss_census(census_p, 1); });
    double p = time_ms([&] { ss_census(census_p, jobs); });
    report("supersingular census", s, p, jobs);
  }
  return 0;
}
