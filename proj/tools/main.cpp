// Command-line front end: experiment sweeps, property checks, truncation
// scans and single solver runs with trajectory dumps.
//
// Exit codes: 0 success, 1 a result missed its verification band, 2 usage
// error.

#include "fsg/experiments.hpp"
#include "fsg/manufactured.hpp"
#include "fsg/reference.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fsg;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(std::stod(item));
  if (out.empty())
    throw CLI::ValidationError("expected a comma-separated numeric list, got '" + csv + "'");
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& csv) {
  std::vector<std::size_t> out;
  for (double v : parse_doubles(csv))
    out.push_back(static_cast<std::size_t>(v));
  return out;
}

struct Common {
  std::string alpha, r, N, M;
  double tol = 0.0;
  std::string out;
  int jobs = 0;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c) {
  // config-file entries are injected before the explicit flags, so every
  // option takes the last occurrence (flags win)
  auto last = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
  last(cmd->add_option("--alpha", c.alpha, "fractional orders, comma separated"));
  last(cmd->add_option("--r", c.r, "mesh grading exponents, comma separated"));
  last(cmd->add_option("--N", c.N, "time step counts, comma separated (doubling)"));
  last(cmd->add_option("--M", c.M, "spatial intervals per edge"));
  last(cmd->add_option("--tol", c.tol, "linear solver tolerance override"));
  last(cmd->add_option("--out", c.out, "output directory (default: FSG_OUT_DIR or ./out)"));
  last(cmd->add_option("--jobs", c.jobs, "worker threads for the parallel kernels"));
  cmd->add_flag("--verbose", c.verbose, "log per-run progress to stderr");
}

std::string out_dir(const Common& c) {
  if (!c.out.empty())
    return c.out;
  if (const char* env = std::getenv("FSG_OUT_DIR"); env && *env)
    return env;
  return "out";
}

void apply_runtime(const Common& c) {
#ifdef _OPENMP
  if (c.jobs > 0)
    omp_set_num_threads(c.jobs);
#else
  (void)c;
#endif
}

StepperOptions stepper_options(const Common& c) {
  StepperOptions opt;
  if (c.tol > 0.0) {
    opt.cg_rel_tol = c.tol;
    opt.cg_abs_tol = c.tol;
  }
  return opt;
}

// Compare a computed sweep against the stored baselines; returns the number
// of misses and prints one line per miss.
int check_against(const RateTable& table, const std::vector<reference::Series>& ref) {
  int misses = 0;
  for (const auto& series : ref) {
    std::vector<const RateRow*> rows;
    for (const auto& row : table.rows)
      if (row.alpha == series.alpha && row.r == series.r)
        rows.push_back(&row);
    if (rows.empty())
      continue;
    for (std::size_t i = 0; i < series.N.size() && i < rows.size(); ++i) {
      if (rows[i]->N != series.N[i])
        break;
      if (!(rows[i]->error > 0.0)) {
        std::printf("MISS alpha=%g r=%g N=%zu: run failed (%s)\n", series.alpha, series.r,
                    series.N[i], rows[i]->note.c_str());
        ++misses;
        continue;
      }
      if (!std::isnan(series.error[i]) &&
          std::abs(rows[i]->error / series.error[i] - 1.0) > series.error_band) {
        std::printf("MISS alpha=%g r=%g N=%zu: error %.4e vs baseline %.4e\n", series.alpha,
                    series.r, series.N[i], rows[i]->error, series.error[i]);
        ++misses;
      }
      if (rows[i]->has_rate && std::abs(rows[i]->rate - series.rate[i - 1]) > series.rate_band) {
        std::printf("MISS alpha=%g r=%g N=%zu: rate %.4f vs baseline %.4f\n", series.alpha,
                    series.r, series.N[i], rows[i]->rate, series.rate[i - 1]);
        ++misses;
      }
    }
  }
  return misses;
}

int cmd_table1(const Common& c) {
  apply_runtime(c);
  const auto& ref = reference::spatial();
  const double alpha = c.alpha.empty() ? ref.alpha : parse_doubles(c.alpha).front();
  const double r = c.r.empty() ? ref.r : parse_doubles(c.r).front();
  const std::size_t N = c.N.empty() ? ref.N : parse_counts(c.N).front();
  std::vector<int> Ms;
  if (c.M.empty())
    Ms = ref.M;
  else
    for (std::size_t m : parse_counts(c.M))
      Ms.push_back(static_cast<int>(m));

  const ProblemSpec spec = example1_spec(alpha);
  const auto mesh = TemporalMesh::graded(spec.final_time, N, r, spec.order.sigma);
  const StepperOptions opt = stepper_options(c);
  RateTable table;
  std::vector<double> errors;
  for (int M : Ms) {
    if (c.verbose)
      std::cerr << "  run spatial M=" << M << "\n";
    const auto s = run(spec, mesh, SpatialGrid::make(spec.length, M), opt);
    const double err = error_h1_exact(s, [&](double x, double y) {
      return example1_exact(x, y, spec.final_time, alpha);
    });
    errors.push_back(err);
    RateRow row;
    row.example = "example1";
    row.alpha = alpha;
    row.r = r;
    row.N = N;
    row.M = M;
    row.error = err;
    row.expected = 2.0;
    if (errors.size() > 1) {
      row.rate = std::log2(errors[errors.size() - 2] / err);
      row.has_rate = true;
    }
    table.rows.push_back(row);
  }
  print_table(table, std::cout);
  const std::string dir = out_dir(c);
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir + "/table1.csv");
  write_csv(table, csv);

  int misses = 0;
  const bool matches_ref = alpha == ref.alpha && r == ref.r && N == ref.N && Ms == ref.M;
  if (matches_ref) {
    for (std::size_t i = 0; i < errors.size(); ++i)
      if (std::abs(errors[i] / ref.error[i] - 1.0) > ref.error_band) {
        std::printf("MISS M=%d: error %.4e vs baseline %.4e\n", Ms[i], errors[i], ref.error[i]);
        ++misses;
      }
    const auto rt = rates(errors);
    for (std::size_t i = 0; i < rt.size(); ++i)
      if (std::abs(rt[i] - ref.rate[i]) > ref.rate_band) {
        std::printf("MISS rate[%zu]: %.4f vs baseline %.4f\n", i, rt[i], ref.rate[i]);
        ++misses;
      }
    std::printf("%s\n", misses == 0 ? "all cells within bands" : "baseline check failed");
  }
  return misses == 0 ? 0 : 1;
}

int run_table_sweep(const Common& c, const std::string& example,
                    const std::vector<reference::Series>& ref, int default_M,
                    const std::vector<std::size_t>& default_N) {
  apply_runtime(c);
  SweepConfig cfg;
  cfg.example = example;
  if (!c.alpha.empty())
    cfg.alphas = parse_doubles(c.alpha);
  if (!c.r.empty())
    cfg.gradings = parse_doubles(c.r);
  cfg.step_counts = c.N.empty() ? default_N : parse_counts(c.N);
  cfg.fixed_M = default_M;
  if (!c.M.empty())
    cfg.fixed_M = static_cast<int>(parse_counts(c.M).front());
  cfg.stepper = stepper_options(c);
  cfg.out_dir = out_dir(c);
  cfg.verbose = c.verbose;
  const RateTable table = run_sweep(cfg);
  print_table(table, std::cout);
  const int misses = check_against(table, ref);
  std::printf("%s\n", misses == 0 ? "all checked cells within bands" : "baseline check failed");
  return misses == 0 ? 0 : 1;
}

int cmd_properties(const Common& c) {
  apply_runtime(c);
  PropertySuiteConfig cfg;
  if (!c.alpha.empty())
    cfg.alphas = parse_doubles(c.alpha);
  if (!c.r.empty())
    cfg.gradings = parse_doubles(c.r);
  if (!c.N.empty())
    cfg.step_counts = parse_counts(c.N);
  const auto rep = property_suite(cfg);
  for (const auto& line : rep.lines)
    std::printf("%s\n", line.c_str());
  return rep.pass ? 0 : 1;
}

int cmd_truncation(const Common& c, const std::string& mu_arg) {
  apply_runtime(c);
  const std::vector<double> alphas = c.alpha.empty() ? std::vector<double>{1.1, 1.5, 1.9}
                                                     : parse_doubles(c.alpha);
  const std::vector<double> rs = c.r.empty() ? std::vector<double>{1.0, 2.0}
                                             : parse_doubles(c.r);
  const std::vector<std::size_t> Ns = c.N.empty()
                                          ? std::vector<std::size_t>{32, 64, 128, 256, 512}
                                          : parse_counts(c.N);
  int misses = 0;
  for (double alpha : alphas) {
    const std::vector<double> mus =
        mu_arg.empty() ? std::vector<double>{alpha / 2.0, alpha} : parse_doubles(mu_arg);
    for (double r : rs) {
      for (double mu : mus) {
        const auto scan = truncation_scan(mu, alpha, r, Ns);
        const bool ok = std::abs(scan.fitted_order - scan.predicted_order) <= 0.15;
        std::printf("%s alpha=%-4g r=%-4g mu=%-5g fitted %.3f predicted %.3f\n",
                    ok ? "OK  " : "MISS", alpha, r, mu, scan.fitted_order,
                    scan.predicted_order);
        if (c.verbose)
          for (const auto& row : scan.rows)
            std::printf("      N=%-5zu err_final %.6e err_max %.6e\n", row.N, row.err_final,
                        row.err_max);
        if (!ok)
          ++misses;
      }
    }
  }
  return misses == 0 ? 0 : 1;
}

int cmd_solve(const Common& c, int example, const std::string& dump, std::size_t dump_every) {
  apply_runtime(c);
  const double alpha = c.alpha.empty() ? 1.5 : parse_doubles(c.alpha).front();
  const double r = c.r.empty() ? 2.0 : parse_doubles(c.r).front();
  const std::size_t N = c.N.empty() ? 32 : parse_counts(c.N).front();
  const int M = c.M.empty() ? (example == 2 ? 25 : static_cast<int>(N))
                            : static_cast<int>(parse_counts(c.M).front());
  const ProblemSpec spec = example == 2 ? example2_spec(alpha) : example1_spec(alpha);
  const auto mesh = TemporalMesh::graded(spec.final_time, N, r, spec.order.sigma);
  const auto grid = SpatialGrid::make(spec.length, M);
  const auto s = run(spec, mesh, grid, stepper_options(c));

  const auto u = s.displacement(N);
  std::printf("final time %.6g: |U|_max %.6e, |grad U| %.6e", mesh.final_time(),
              norm_max(u), seminorm_h1(u));
  if (example == 1) {
    const double err = error_h1_exact(
        s, [&](double x, double y) { return example1_exact(x, y, spec.final_time, alpha); });
    std::printf(", H1 error vs exact %.6e", err);
  }
  std::printf("\n");

  if (!dump.empty()) {
    std::ofstream f(dump);
    if (!f)
      throw CLI::ValidationError("cannot open dump file '" + dump + "'");
    f << "# example=" << example << " alpha=" << alpha << " r=" << r << " N=" << N
      << " M=" << M << "\n";
    f << "# record: n, t_n, ubar (row-major interior), p (row-major interior)\n";
    f.precision(17);
    for (std::size_t n = 0; n <= N; n += dump_every) {
      f << n << ',' << mesh.t(n);
      for (double v : s.ubar[n].values())
        f << ',' << v;
      for (double v : s.p[n].values())
        f << ',' << v;
      f << '\n';
    }
    std::printf("trajectory written to %s (every %zu levels)\n", dump.c_str(), dump_every);
  }
  return 0;
}

// Flat key=value files are merged as if their entries were typed before the
// command-line flags, so explicit flags always win.
std::vector<std::string> merge_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config")
      path = args[i + 1];
  if (path.empty())
    return args;
  std::ifstream in(path);
  if (!in)
    throw CLI::ValidationError("cannot open config file '" + path + "'");
  const auto kv = parse_flat_config(in);
  std::vector<std::string> merged;
  if (!args.empty())
    merged.push_back(args.front());  // subcommand stays first
  for (const auto& [key, value] : kv) {
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  for (std::size_t i = 1; i < args.size(); ++i)
    merged.push_back(args[i]);
  return merged;
}

}  // namespace

int main(int argc, char** argv) {  CLI::App app{"Linearized offset-point solver for the 2-D time-fractional "
               "sine-Gordon equation, with an experiment harness"};
  app.require_subcommand(1);

  Common c_table1, c_local, c_example2, c_props, c_trunc, c_solve;
  std::string mu_arg, dump_path;
  std::size_t dump_every = 1;
  int solve_example = 1;
  std::string config_path;  // consumed by merge_config; registered so CLI11 accepts it

  auto* t1 = app.add_subcommand("table1", "spatially dominated errors (N=800, M sweep)");
  add_common(t1, c_table1);
  t1->add_option("--config", config_path);

  auto* lo = app.add_subcommand("local", "local temporal errors with M = N");
  add_common(lo, c_local);
  lo->add_option("--config", config_path);

  auto* e2 = app.add_subcommand("example2", "two-mesh errors for the unknown-solution problem");
  add_common(e2, c_example2);
  e2->add_option("--config", config_path);

  auto* pr = app.add_subcommand("properties", "coefficient and grid property suite");
  add_common(pr, c_props);
  pr->add_option("--config", config_path);

  auto* tr = app.add_subcommand("truncation", "discrete-derivative truncation orders");
  add_common(tr, c_trunc);
  tr->add_option("--mu", mu_arg, "test-function exponents, comma separated")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  tr->add_option("--config", config_path);

  auto* so = app.add_subcommand("solve", "single run with optional trajectory dump");
  add_common(so, c_solve);
  so->add_option("--example", solve_example, "benchmark problem (1 or 2)")
      ->check(CLI::Range(1, 2))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  so->add_option("--dump", dump_path, "trajectory dump file")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  so->add_option("--dump-every", dump_every, "record every k-th level")
      ->check(CLI::PositiveNumber)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  so->add_option("--config", config_path);

  try {
    const auto args = merge_config(argc, argv);
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args)
      cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (t1->parsed())
      return cmd_table1(c_table1);
    if (lo->parsed())
      return run_table_sweep(c_local, "example1", fsg::reference::local_example1(), 0,
                             {16, 32, 64, 128});
    if (e2->parsed())
      return run_table_sweep(c_example2, "example2", fsg::reference::two_mesh_example2(), 25,
                             {32, 64, 128, 256, 512});
    if (pr->parsed())
      return cmd_properties(c_props);
    if (tr->parsed())
      return cmd_truncation(c_trunc, mu_arg);
    if (so->parsed())
      return cmd_solve(c_solve, solve_example, dump_path, dump_every);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
