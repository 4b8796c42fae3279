// Timing comparison of the serial and OpenMP kernels: the circle scan, the
// certified circle search, and the sweep row pool. Also confirms that the
// parallel paths reproduce the serial results bit for bit.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oscbound/bounds.hpp"
#include "oscbound/cli.hpp"
#include "oscbound/rng.hpp"
#include "oscbound/unipoly.hpp"

using namespace oscbound;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

CPoly random_poly(Rng &rng, size_t degree) {
  std::vector<cplx> c(degree + 1);
  for (cplx &v : c) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return CPoly(std::move(c));
}

template <class F>
double best_of(int reps, F &&f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clock_type::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run serially\n\n");
#endif

  Rng rng(424242);
  CPoly p = random_poly(rng, 64);
  const size_t samples = 1 << 16;

  CircleScan ser, par;
  double t_scan_s = best_of(5, [&] { ser = eval_circle(p, 1.5, samples, ExecMode::serial, false); });
  double t_scan_p = best_of(5, [&] { par = eval_circle(p, 1.5, samples, ExecMode::parallel, false); });
  bool scan_match = ser.min_abs == par.min_abs && ser.max_abs == par.max_abs &&
                    ser.argmin_angle == par.argmin_angle &&
                    ser.certified_min == par.certified_min;
  std::printf("circle scan (deg 64, %zu samples):   serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
              samples, t_scan_s, t_scan_p, t_scan_s / t_scan_p,
              scan_match ? "identical" : "MISMATCH");

  BoundConstants bc;
  CircleSearch cs_s, cs_p;
  double t_cs_s = best_of(3, [&] { cs_s = circle_lower_bound(p, bc, ExecMode::serial); });
  double t_cs_p = best_of(3, [&] { cs_p = circle_lower_bound(p, bc, ExecMode::parallel); });
  bool cs_match = cs_s.r_star == cs_p.r_star && cs_s.m_hat == cs_p.m_hat &&
                  cs_s.argmin_angle == cs_p.argmin_angle;
  std::printf("certified circle search (deg 64):    serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
              t_cs_s, t_cs_p, t_cs_s / t_cs_p, cs_match ? "identical" : "MISMATCH");

  RunConfig cfg;
  cfg.command = "sweep";
  cfg.seed = 7;
  cfg.draws = 24;
  cfg.sweep_n = 2;
  cfg.sweep_m = 2;
  cfg.entry_bound = 1;
  std::string rep_serial, rep_parallel;
  double t_sw_s = 0.0, t_sw_p = 0.0;
#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  t_sw_s = best_of(1, [&] { rep_serial = run_sweep(cfg).dump(2); });
  omp_set_num_threads(max_threads);
  t_sw_p = best_of(1, [&] { rep_parallel = run_sweep(cfg).dump(2); });
#else
  t_sw_s = best_of(1, [&] { rep_serial = run_sweep(cfg).dump(2); });
  t_sw_p = best_of(1, [&] { rep_parallel = run_sweep(cfg).dump(2); });
#endif
  std::printf("sweep rows (24 draws, n=2, m=2):     serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
              t_sw_s, t_sw_p, t_sw_s / t_sw_p,
              rep_serial == rep_parallel ? "identical" : "MISMATCH");

  bool ok = scan_match && cs_match && rep_serial == rep_parallel;
  std::printf("\n%s\n", ok ? "all parallel kernels reproduce the serial results"
                           : "PARALLEL/SERIAL DISAGREEMENT");
  return ok ? 0 : 1;
}
