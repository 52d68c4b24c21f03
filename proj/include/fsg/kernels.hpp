#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fsg::kernels {

// Execution mode for the data-parallel kernels.  The parallel path and the
// serial reference produce bitwise-identical results: reductions always run
// over a fixed block tree, so the result does not depend on the thread count.
enum class Mode { serial, parallel };

Mode& mode();
inline bool par() { return mode() == Mode::parallel; }

// Neumaier-compensated accumulator.
struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

inline constexpr std::size_t kBlock = 1024;

// Fork/join overhead swamps small regions; below this much work the parallel
// clause stays off.  The block tree is unchanged, so results are bitwise
// identical either way.  The bench target measures where the crossover sits
// on a given machine.
inline constexpr std::size_t kParallelCutoff = 32768;
inline bool par(std::size_t work) { return par() && work >= kParallelCutoff; }

// Compensated dot product / max-abs over fixed blocks.
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

// out = alpha*x + beta*y
void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out);

// out = a .* b
void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out);

template <class F>
void map(std::span<const double> in, std::span<double> out, F f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (par(in.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
}

// Deterministic two-stage reduction: row sums computed independently (in
// parallel), then combined in index order with compensation.
template <class F>
double reduce_rows(std::size_t rows, F row_sum) {
  std::vector<double> partial(rows);
  const std::ptrdiff_t R = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (par(rows * kBlock))
  for (std::ptrdiff_t j = 0; j < R; ++j)
    partial[static_cast<std::size_t>(j)] = row_sum(static_cast<std::size_t>(j));
  Kahan acc;
  for (double v : partial)
    acc.add(v);
  return acc.value();
}

// out[i] = sum_{k=1}^{count} w[k] * (level(k)[i] - level(k-1)[i]).
// w is 1-based (w[0] ignored); level(k) must expose out.size() entries.
// This is the nonlocal-memory inner loop: parallel over point blocks, the
// k-sweep inside a block runs in fixed order in both modes.
template <class GetLevel>
void history_combine(std::span<const double> w, GetLevel level, std::size_t count,
                     std::span<double> out) {
  const std::size_t n = out.size();
  const std::ptrdiff_t nblocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static) if (par(n * count))
  for (std::ptrdiff_t jb = 0; jb < nblocks; ++jb) {
    const std::size_t lo = static_cast<std::size_t>(jb) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i)
      out[i] = 0.0;
    for (std::size_t k = 1; k <= count; ++k) {
      const double wk = w[k];
      const double* cur = level(k);
      const double* prev = level(k - 1);
      for (std::size_t i = lo; i < hi; ++i)
        out[i] += wk * (cur[i] - prev[i]);
    }
  }
}

// Five-point Laplacian with implicit zero boundary on an m-by-m interior
// block (row-major, x fastest).
void laplacian5(const double* u, double* out, std::size_t m, double inv_h2);

// out = (mass + diag[i])*u[i] - nu_sigma * Laplacian(u)[i]
void helmholtz(double mass, double nu_sigma, double inv_h2, const double* diag,
               const double* u, double* out, std::size_t m);

}  // namespace fsg::kernels
