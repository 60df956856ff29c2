// Compares the OpenMP orbit/enumeration kernels against the serial reference
// implementations on desk-scale finite rings and reports timings plus a
// consistency check.

#include "exalg/io.hpp"
#include "exalg/orbits.hpp"

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace exalg;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

void bench_ring(const std::string& label, const RingPtr& ring, int n, bool run_serial) {
  FiniteRingEnum R(ring);
  std::cout << "== " << label << ", n = " << n << " (|R| = " << R.size() << ") ==\n";

  auto t0 = std::chrono::steady_clock::now();
  auto rows = enum_um(n, R);
  double t_enum = ms_since(t0);
  std::cout << "  enum_um (parallel):       " << t_enum << " ms, " << rows.size()
            << " unimodular rows\n";

  if (run_serial) {
    t0 = std::chrono::steady_clock::now();
    auto rows_ref = enum_um_serial(n, R);
    double t_enum_ref = ms_since(t0);
    std::cout << "  enum_um (serial ref):     " << t_enum_ref << " ms"
              << (rows_ref == rows ? "  [match]" : "  [MISMATCH]") << "\n";
  }

  t0 = std::chrono::steady_clock::now();
  OrbitTable par = orbit_bfs(rows, n, R, OrbitFamily::Linear);
  double t_bfs = ms_since(t0);
  std::cout << "  orbit_bfs (parallel):     " << t_bfs << " ms, " << par.orbit_count()
            << " orbit(s)\n";

  if (run_serial) {
    t0 = std::chrono::steady_clock::now();
    OrbitTable ser = orbit_bfs_serial(rows, n, R, OrbitFamily::Linear);
    double t_bfs_ref = ms_since(t0);
    bool match = ser.orbit_of == par.orbit_of && ser.sizes == par.sizes;
    std::cout << "  orbit_bfs (serial ref):   " << t_bfs_ref << " ms"
              << (match ? "  [match]" : "  [MISMATCH]") << "\n";
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n\n";
#else
  std::cout << "built without OpenMP; kernels run serially\n\n";
#endif

  bench_ring("Z/6", Ring::modular(6), 3, true);
  bench_ring("F_2[t]/(t^3)", parse_ring_spec("fp2[t]/(t^3)"), 3, true);
  if (!quick) {
    bench_ring("F_3[t]/(t^3)", parse_ring_spec("fp3[t]/(t^3)"), 3, false);
    bench_ring("Z/30", Ring::modular(30), 3, false);
  }
  return 0;
}
