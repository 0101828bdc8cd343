// Benchmark: OpenMP sweep kernel against the serial reference on a dense
// gain/loss phase grid.  Also asserts the two produce identical grids.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quadham/sweep.hpp"

using namespace quadham;

namespace {

double seconds_for(const SweepGrid& (*)(void)) { return 0; }

template <typename F>
double time_once(F&& f) {
  auto start = std::chrono::steady_clock::now();
  f();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool same(const SweepGrid& a, const SweepGrid& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i].phase != b.cells[i].phase ||
        a.cells[i].ok != b.cells[i].ok ||
        a.cells[i].max_im != b.cells[i].max_im) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 120;
  const ModelSpec& spec = catalog_model("gainloss");
  std::vector<SweepAxis> axes{{"gamma", 0.0, 1.5, n}, {"epsilon", 0.0, 1.5, n}};

  SweepGrid reference;
  double t_serial = time_once([&] { reference = run_sweep_serial(spec, {}, axes); });
  std::printf("grid %dx%d (%d cells)\n", n, n, n * n);
  std::printf("%-22s %8.3f s   %10.0f cells/s\n", "serial reference",
              t_serial, n * n / t_serial);

#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
#else
  int max_threads = 1;
#endif
  for (int jobs : {1, 2, 4, max_threads}) {
    if (jobs > max_threads) continue;
    SweepGrid grid;
    double t = time_once([&] { grid = run_sweep(spec, {}, axes, jobs); });
    std::printf("omp jobs=%-13d  %8.3f s   %10.0f cells/s   speedup %.2fx  %s\n",
                jobs, t, n * n / t, t_serial / t,
                same(reference, grid) ? "identical" : "MISMATCH");
    if (!same(reference, grid)) return 1;
  }
  return 0;
}
