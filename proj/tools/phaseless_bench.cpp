// SNR sweep driver: writes trials.csv, aggregate.csv, aggregate_db.csv,
// manifest.txt and optional per-SNR trace CSVs into --out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "phaseless/bench.hpp"

namespace fs = std::filesystem;
using namespace phaseless;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  body(out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string snr_tag(double snr) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", snr);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRLS phase retrieval SNR sweep"};

  long n = 100;
  long m = 0;
  double redundancy = 8.0;
  double snr_start = -30.0, snr_stop = 40.0, snr_step = 5.0;
  int trials = 100;
  std::uint64_t seed = 1;
  IrlsConfig irls;
  irls.stop = StopMode::lambda_floor;
  std::string init = "eigen";
  std::string stop = "lambda";
  std::string out_dir = "bench_out";
  bool traces = false;
  int threads = 0;
  int signals = 1;
  int a0_restarts = 2;
  int max_iters = irls.max_iters;

  app.add_option("--n", n, "Signal dimension");
  app.add_option("--m", m, "Number of measurements (overrides --redundancy)");
  app.add_option("--redundancy", redundancy, "m / n when --m is not given");
  app.add_option("--snr-start", snr_start, "First SNR in dB");
  app.add_option("--snr-stop", snr_stop, "Last SNR in dB");
  app.add_option("--snr-step", snr_step, "SNR increment in dB");
  app.add_option("--trials", trials, "Noise realizations per SNR");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--rho", irls.rho, "lambda0 = rho * a1");
  app.add_option("--gamma", irls.gamma, "Annealing rate");
  app.add_option("--lambda-min", irls.lambda_min, "Lambda floor");
  app.add_option("--mu-min", irls.mu_min, "Mu floor");
  app.add_option("--kappa", irls.kappa, "Residual stop factor");
  app.add_option("--max-iters", max_iters, "Iteration cap");
  app.add_option("--init", init, "Initialization")->check(CLI::IsMember({"eigen", "random"}));
  app.add_option("--stop", stop, "Stopping rule")->check(CLI::IsMember({"lambda", "residual", "either"}));
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--traces", traces, "Write one trace CSV per SNR");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--signals", signals, "Independent signals, one sweep each");
  app.add_option("--a0-restarts", a0_restarts, "Restarts for the a0 estimate (0 = skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  ExperimentSpec spec;
  try {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    spec.n = n;
    if (m > 0) {
      spec.m = m;
    } else {
      if (!(redundancy >= 1.0)) throw std::invalid_argument("--redundancy must be >= 1");
      spec.m = static_cast<Index>(std::llround(redundancy * static_cast<double>(n)));
    }
    spec.snr_db = snr_grid(snr_start, snr_stop, snr_step);
    spec.trials = trials;
    spec.master_seed = seed;
    irls.init = parse_init_mode(init);
    irls.stop = parse_stop_mode(stop);
    irls.max_iters = max_iters;
    spec.irls = irls;
    spec.threads = threads;
    spec.signals = signals;
    spec.a0_restarts = a0_restarts;
    spec.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const fs::path root(out_dir);
    fs::create_directories(root);
    for (int s = 0; s < spec.signals; ++s) {
      const fs::path dir = spec.signals == 1 ? root : root / ("signal_" + std::to_string(s));
      fs::create_directories(dir);
      const Problem problem = make_problem(spec, s);
      const SweepResult result = run_sweep(spec, problem, s);
      write_file(dir / "trials.csv", [&](std::ostream& o) { write_trials_csv(result.trials, o); });
      write_file(dir / "aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(result.aggregates, o); });
      write_file(dir / "aggregate_db.csv",
                 [&](std::ostream& o) { write_aggregate_db_csv(result.aggregates, o); });
      write_file(dir / "manifest.txt", [&](std::ostream& o) { write_manifest(spec, problem, result, o); });
      if (traces) {
        for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
          const IrlsTrace trace = run_traces(spec, problem, static_cast<int>(i), s);
          write_file(dir / ("trace_snr_" + snr_tag(spec.snr_db[i]) + ".csv"),
                     [&](std::ostream& o) { write_trace_csv(trace, o); });
        }
      }
      std::cout << dir.string() << ": " << result.trials.size() << " trials\n";
    }
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
