#pragma once
// Monte-Carlo harness: one frame and one signal, noise-only trials across an
// SNR sweep, with per-trial and aggregate CSV output.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseless/analysis.hpp"
#include "phaseless/frames.hpp"
#include "phaseless/irls.hpp"
#include "phaseless/types.hpp"

namespace phaseless {

/// The frame or signal cannot support the experiment (CLI exit code 3).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  Index n = 100;
  Index m = 800;
  std::vector<double> snr_db;
  int trials = 100;
  std::uint64_t master_seed = 1;
  IrlsConfig irls;
  /// Signals drawn on the shared frame, each with its own sweep.
  int signals = 1;
  /// 0 uses the hardware concurrency.
  int threads = 0;
  /// Restarts for the a0 estimate in the manifest; 0 skips it.
  int a0_restarts = 0;
  int a0_iters = 30;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// start, start + step, ... up to stop inclusive (within step / 2).
std::vector<double> snr_grid(double start, double stop, double step);

struct Problem {
  Frame frame;
  ComplexVector x;
};

/// Gaussian frame from the master seed and an i.i.d. complex Gaussian signal
/// whose first component is rotated to be real positive.
Problem make_problem(const ExperimentSpec& spec, int signal_index = 0);

struct PhaseAlignment {
  ComplexVector aligned;
  /// <x_hat, x_true> = 0: returned unchanged.
  bool degenerate = false;
};

/// e^{i phi} x_hat with <aligned, x_true> real nonnegative.
PhaseAlignment phase_align(const ComplexVector& x_hat, const ComplexVector& x_true);

enum class TrialStatus { ok, zero_solution, failed };
std::string to_string(TrialStatus status);

struct TrialRecord {
  double snr_db = 0.0;
  int snr_index = 0;
  int trial = 0;
  TrialStatus status = TrialStatus::ok;
  int iters = 0;
  /// |aligned x_hat - x|^2.
  double mse = 0.0;
  double crlb_trace = 0.0;
  double final_residual = 0.0;
  /// aligned x_hat - x.
  ComplexVector error;
};

struct Aggregate {
  double snr_db = 0.0;
  double mse = 0.0;
  double bias_sq = 0.0;
  double variance = 0.0;
  double crlb_trace = 0.0;
  double mean_iters = 0.0;
  std::optional<double> mse_upper_efficient;
};

struct SweepResult {
  std::vector<TrialRecord> trials;
  std::vector<Aggregate> aggregates;
  std::optional<StabilityReport> stability;
};

/// Noise stream of trial t at SNR index s for the given signal.
std::uint64_t trial_seed(std::uint64_t master, int signal_index, int snr_index, int trial);

/// Runs every (snr, trial) pair on a worker pool; results do not depend on
/// the thread count.
SweepResult run_sweep(const ExperimentSpec& spec, const Problem& problem, int signal_index = 0);

/// Per-SNR mean of the error vectors and their squared norms.
std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& trials,
                                 const std::vector<double>& snr_db);

/// The trial-0 run at one SNR, with per-iteration errors against the truth.
IrlsTrace run_traces(const ExperimentSpec& spec, const Problem& problem, int snr_index,
                     int signal_index = 0);

void write_trials_csv(const std::vector<TrialRecord>& trials, std::ostream& out);
void write_aggregate_csv(const std::vector<Aggregate>& aggregates, std::ostream& out);
/// Same rows in dB, plus the efficient-estimator upper bound when known.
void write_aggregate_db_csv(const std::vector<Aggregate>& aggregates, std::ostream& out);
void write_trace_csv(const IrlsTrace& trace, std::ostream& out);
void write_manifest(const ExperimentSpec& spec, const Problem& problem, const SweepResult& result,
                    std::ostream& out);

/// Calls fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// %.17g, with inf and nan spelled out.
std::string format_double(double v);
/// 10 log10(v).
double to_db(double v);

}  // namespace phaseless
