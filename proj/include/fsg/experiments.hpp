#pragma once

#include "fsg/coeffs.hpp"
#include "fsg/manufactured.hpp"
#include "fsg/stepper.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fsg {

// ---------------------------------------------------------------------------
// Error evaluation

// H1-seminorm of (U^N - exact(., t_N)); exact_at_T samples the solution at the
// final time.
double error_h1_exact(const SolverState& state, const Field2& exact_at_T);

// Two-mesh estimate: H1-seminorm of the difference between the final fields
// of the coarse-count and fine-count runs on the same spatial grid.  fine = 2N
// in normal use; the overload taking both counts exists as a test hook.
double two_mesh_error(const ProblemSpec& spec, double r, std::size_t coarse,
                      std::size_t fine, int M, const StepperOptions& opt = {});
double two_mesh_error(const ProblemSpec& spec, double r, std::size_t N, int M,
                      const StepperOptions& opt = {});

// log2 of successive error ratios over a doubling count sequence.
std::vector<double> rates(std::span<const double> errors);

// ---------------------------------------------------------------------------
// Table sweeps

struct SweepConfig {
  std::string example = "example1";       // "example1" | "example2"
  std::vector<double> alphas{1.1, 1.5, 1.9};
  std::vector<double> gradings{1.0, 1.5, 2.0};
  std::vector<std::size_t> step_counts{16, 32, 64, 128};  // doubling
  int fixed_M = 0;                        // 0: pair M = N
  StepperOptions stepper;
  std::string out_dir;                    // empty: no files written
  bool verbose = false;
};

struct RateRow {
  std::string example;
  double alpha = 0.0;
  double r = 0.0;
  std::size_t N = 0;
  int M = 0;
  double error = 0.0;
  double rate = 0.0;      // valid only when has_rate
  bool has_rate = false;
  double expected = 0.0;  // min{2, r}
  std::string note;       // per-cell failure message, log-case flag
};

struct RateTable {
  std::vector<RateRow> rows;
};

// Runs the configured sweep cell by cell; per-cell failures are recorded in
// the row note and the sweep continues.  When out_dir is set, writes
// results.csv plus one two-column plot file per (alpha, r) series.
RateTable run_sweep(const SweepConfig& config);

void write_csv(const RateTable& table, std::ostream& out);
void write_plot_data(const RateTable& table, const std::string& dir);
void print_table(const RateTable& table, std::ostream& out);

// ---------------------------------------------------------------------------
// Truncation-rate scans

struct TruncationRow {
  std::size_t N = 0;
  double err_final = 0.0;  // at the last offset point
  double err_max = 0.0;    // over all offset points
  double rate = 0.0;
  bool has_rate = false;
};

struct TruncationScan {
  double mu = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  double predicted_order = 0.0;  // min{ r(mu+1), 3 - beta } at fixed final time
  double fitted_order = 0.0;     // least-squares slope of log2 err vs log2 N
  std::vector<TruncationRow> rows;
};

// Discrete-vs-exact Caputo error for t^mu on meshes graded with exponent r,
// final time 1, across the given step counts.
TruncationScan truncation_scan(double mu, double alpha, double r,
                               std::span<const std::size_t> step_counts);

// ---------------------------------------------------------------------------
// Property suite

struct PropertySuiteConfig {
  std::vector<double> alphas{1.1, 1.3, 1.5, 1.7, 1.9};
  std::vector<double> gradings{1.0, 1.5, 2.0, 3.0};
  std::vector<std::size_t> step_counts{16, 64, 256};
  std::vector<int> grid_sizes{8, 16, 32};
  std::size_t random_pairs = 100;   // summation-by-parts trials per grid
  std::size_t inequality_trials = 100;
  unsigned seed = 20240817;
};

struct PropertySuiteReport {
  bool pass = false;
  std::vector<std::string> lines;  // one line per check group
};

PropertySuiteReport property_suite(const PropertySuiteConfig& config);

// ---------------------------------------------------------------------------
// Flat key-value config files (``key = value`` per line, '#' comments)

std::map<std::string, std::string> parse_flat_config(std::istream& in);
std::string serialize_flat_config(const std::map<std::string, std::string>& kv);

}  // namespace fsg
