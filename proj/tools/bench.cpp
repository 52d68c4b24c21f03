// Benchmark: OpenMP kernels against the serial reference, plus one full
// solver run in each mode.

#include "fsg/experiments.hpp"
#include "fsg/kernels.hpp"
#include "fsg/manufactured.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fsg;
namespace k = kernels;

namespace {

template <class F>
double time_loop(F&& body, int reps) {
  body();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i)
    body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

template <class F>
void compare(const char* name, F&& body, int reps) {
  k::mode() = k::Mode::serial;
  const double ts = time_loop(body, reps);
  k::mode() = k::Mode::parallel;
  const double tp = time_loop(body, reps);
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n", name,
              1e3 * ts, 1e3 * tp, ts / tp);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif

  const std::size_t m = 127, sz = m * m, levels = 256;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(sz), b(sz), out(sz), diag(sz), w(levels + 1);
  for (double& v : a) v = unif(rng);
  for (double& v : b) v = unif(rng);
  for (double& v : diag) v = unif(rng);
  for (double& v : w) v = 0.5 + unif(rng) * 0.1;
  std::vector<std::vector<double>> hist(levels + 1, std::vector<double>(sz));
  for (auto& lvl : hist)
    for (double& v : lvl)
      v = unif(rng);

  volatile double sink = 0.0;
  compare("dot", [&] { sink = sink + k::dot(a, b); }, 200);
  compare("axpby", [&] { k::axpby(1.1, a, -0.7, b, out); }, 200);
  compare("laplacian5", [&] { k::laplacian5(a.data(), out.data(), m, 1.0); }, 200);
  compare("helmholtz", [&] { k::helmholtz(2.0, 0.3, 1.0, diag.data(), a.data(), out.data(), m); },
          200);
  compare("history_combine",
          [&] {
            k::history_combine(w, [&](std::size_t l) { return hist[l].data(); }, levels, out);
          },
          20);

  compare("solve example1 32x32",
          [&] {
            const ProblemSpec spec = example1_spec(1.5);
            const auto mesh = TemporalMesh::graded(spec.final_time, 32, 2.0, spec.order.sigma);
            run(spec, mesh, SpatialGrid::make(spec.length, 32));
          },
          3);
  compare("solve example1 96x96",
          [&] {
            const ProblemSpec spec = example1_spec(1.5);
            const auto mesh = TemporalMesh::graded(spec.final_time, 96, 2.0, spec.order.sigma);
            run(spec, mesh, SpatialGrid::make(spec.length, 96));
          },
          1);
  return 0;
}
