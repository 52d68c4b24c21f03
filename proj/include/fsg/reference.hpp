#pragma once

#include <cstddef>
#include <vector>

namespace fsg::reference {

// Regression baselines for the shipped experiment configurations.  Every
// series fixes (alpha, r) and lists the final-time H1-seminorm errors over a
// doubling sequence of step counts together with the observed rates.  Band
// widths encode how tightly a rerun is expected to reproduce each number:
// the exact-solution runs are fully deterministic, the two-mesh runs compound
// two solves and get a wider band.
struct Series {
  double alpha;
  double r;
  int M;                             // fixed spatial size; 0 means M = N
  std::vector<std::size_t> N;
  std::vector<double> error;         // one per N; NaN marks an unusable cell
  std::vector<double> rate;          // one per adjacent pair
  double error_band;                 // relative band on errors
  double rate_band;                  // absolute band on rates
};

// Spatially dominated run: alpha = 1.5, r = 1.5, N = 800, M in {4,8,16,32}.
struct SpatialSeries {
  double alpha;
  double r;
  std::size_t N;
  std::vector<int> M;
  std::vector<double> error;
  std::vector<double> rate;
  double error_band;
  double rate_band;
};

const SpatialSeries& spatial();                    // table 1
const std::vector<Series>& local_example1();       // tables 2-4, M = N
const std::vector<Series>& two_mesh_example2();    // tables 5-7, M = 25

}  // namespace fsg::reference
