#include "phaseless/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "phaseless/crlb.hpp"
#include "phaseless/hilbert.hpp"
#include "phaseless/measurement.hpp"
#include "phaseless/rng.hpp"

namespace phaseless {

namespace {

enum StreamTag : std::uint64_t {
  kFrameStream = 1,
  kSignalStream = 2,
  kNoiseStream = 3,
  kInitStream = 4,
  kA0Stream = 5,
};

}  // namespace

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n < 1) fail("n must be >= 1");
  if (m < n) fail("m must be >= n");
  if (snr_db.empty()) fail("SNR list is empty");
  for (double s : snr_db) {
    if (!std::isfinite(s)) fail("SNR values must be finite");
  }
  if (trials < 1) fail("trials must be >= 1");
  if (signals < 1) fail("signals must be >= 1");
  if (threads < 0) fail("threads must be >= 0");
  if (a0_restarts < 0) fail("a0 restarts must be >= 0");
  if (a0_iters < 1) fail("a0 iterations must be >= 1");
  irls.validate();
}

std::vector<double> snr_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument("snr_grid: non-finite bound");
  }
  if (!(step > 0.0)) throw std::invalid_argument("snr_grid: step must be positive");
  if (stop < start) throw std::invalid_argument("snr_grid: stop < start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

Problem make_problem(const ExperimentSpec& spec, int signal_index) {
  std::optional<Frame> frame;
  try {
    frame.emplace(random_gaussian_frame(spec.n, spec.m, derive_seed(spec.master_seed, {kFrameStream})));
  } catch (const std::invalid_argument& e) {
    throw DegenerateInput(e.what());
  }
  Rng rng(derive_seed(spec.master_seed, {kSignalStream, static_cast<std::uint64_t>(signal_index)}));
  ComplexVector x = rng.complex_normal_vector(spec.n);
  const double a = std::abs(x[0]);
  if (!(a > 0.0)) throw DegenerateInput("signal has a zero first component");
  x *= std::conj(x[0]) / a;
  x[0] = Complex(x[0].real(), 0.0);
  return {std::move(*frame), std::move(x)};
}

PhaseAlignment phase_align(const ComplexVector& x_hat, const ComplexVector& x_true) {
  require_same_dim(x_hat.size(), x_true.size(), "phase_align");
  const Complex c = inner(x_true, x_hat);
  const double mag = std::abs(c);
  if (!(mag > 0.0)) return {x_hat, true};
  return {x_hat * (c / mag), false};
}

std::string to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::ok: return "ok";
    case TrialStatus::zero_solution: return "zero";
    case TrialStatus::failed: return "failed";
  }
  return "?";
}

std::uint64_t trial_seed(std::uint64_t master, int signal_index, int snr_index, int trial) {
  return derive_seed(master, {kNoiseStream, static_cast<std::uint64_t>(signal_index),
                              static_cast<std::uint64_t>(snr_index),
                              static_cast<std::uint64_t>(trial)});
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

IrlsConfig trial_config(const ExperimentSpec& spec, double sigma, int signal_index, int snr_index,
                        int trial) {
  IrlsConfig cfg = spec.irls;
  cfg.noise_sigma = sigma;
  cfg.init_seed = derive_seed(spec.master_seed, {kInitStream, static_cast<std::uint64_t>(signal_index),
                                                 static_cast<std::uint64_t>(snr_index),
                                                 static_cast<std::uint64_t>(trial)});
  return cfg;
}

MeasurementVector noisy_measurements(const ExperimentSpec& spec, const Problem& p, double sigma,
                                     int signal_index, int snr_index, int trial) {
  Rng rng(trial_seed(spec.master_seed, signal_index, snr_index, trial));
  return add_noise(alpha(p.frame, p.x), sigma, rng);
}

}  // namespace

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& trials,
                                 const std::vector<double>& snr_db) {
  std::vector<Aggregate> out(snr_db.size());
  for (std::size_t s = 0; s < snr_db.size(); ++s) {
    Aggregate& a = out[s];
    a.snr_db = snr_db[s];
    ComplexVector mean_err;
    double sum_sq = 0.0;
    double sum_iters = 0.0;
    int count = 0;
    for (const auto& t : trials) {
      if (t.snr_index != static_cast<int>(s)) continue;
      if (count == 0) mean_err = ComplexVector::Zero(t.error.size());
      mean_err += t.error;
      sum_sq += t.error.squaredNorm();
      sum_iters += t.iters;
      a.crlb_trace = t.crlb_trace;
      ++count;
    }
    if (count == 0) continue;
    mean_err /= static_cast<double>(count);
    a.mse = sum_sq / count;
    a.bias_sq = mean_err.squaredNorm();
    double spread = 0.0;
    for (const auto& t : trials) {
      if (t.snr_index == static_cast<int>(s)) spread += (t.error - mean_err).squaredNorm();
    }
    a.variance = spread / count;
    a.mean_iters = sum_iters / count;
  }
  return out;
}

SweepResult run_sweep(const ExperimentSpec& spec, const Problem& problem, int signal_index) {
  spec.validate();
  const Frame& frame = problem.frame;
  const ComplexVector& x = problem.x;
  const std::size_t n_snr = spec.snr_db.size();

  SweepResult result;
  std::optional<double> a0;
  if (spec.a0_restarts > 0) {
    A0Options opt;
    opt.restarts = spec.a0_restarts;
    opt.iters = spec.a0_iters;
    opt.samples = 0;
    opt.seed = derive_seed(spec.master_seed, {kA0Stream});
    result.stability = estimate_a0_opt(frame, opt);
    a0 = result.stability->a0_opt;
  }

  const ComplexVector z0 = x / x.norm();
  std::vector<double> sigmas(n_snr);
  std::vector<CrlbResult> bounds;
  bounds.reserve(n_snr);
  for (std::size_t s = 0; s < n_snr; ++s) {
    sigmas[s] = sigma_for_snr(frame, x, spec.snr_db[s]);
    bounds.push_back(crlb_bound(frame, x, z0, sigmas[s], 1e-10, a0));
    if (bounds.back().degenerate) {
      throw DegenerateInput("frame is not injective at the signal (Fisher rank " +
                            std::to_string(bounds.back().rank_used) + ")");
    }
  }

  const std::size_t total = n_snr * static_cast<std::size_t>(spec.trials);
  result.trials.resize(total);
  parallel_for(total, spec.threads, [&](std::size_t idx) {
    const int s = static_cast<int>(idx / static_cast<std::size_t>(spec.trials));
    const int t = static_cast<int>(idx % static_cast<std::size_t>(spec.trials));
    TrialRecord rec;
    rec.snr_db = spec.snr_db[s];
    rec.snr_index = s;
    rec.trial = t;
    rec.crlb_trace = bounds[s].mse_lower;
    const MeasurementVector y = noisy_measurements(spec, problem, sigmas[s], signal_index, s, t);
    ComplexVector x_hat;
    try {
      const IrlsResult r = solve(frame, y, trial_config(spec, sigmas[s], signal_index, s, t));
      rec.status = r.status == SolveStatus::ok ? TrialStatus::ok : TrialStatus::zero_solution;
      rec.iters = std::max(r.iters, 1);
      x_hat = r.x_hat;
    } catch (const std::runtime_error&) {
      rec.status = TrialStatus::failed;
      rec.iters = 1;
      x_hat = ComplexVector::Zero(frame.n());
    }
    rec.final_residual = (y - alpha(frame, x_hat)).squaredNorm();
    rec.error = phase_align(x_hat, x).aligned - x;
    rec.mse = rec.error.squaredNorm();
    result.trials[idx] = std::move(rec);
  });

  result.aggregates = aggregate(result.trials, spec.snr_db);
  for (std::size_t s = 0; s < n_snr; ++s) {
    result.aggregates[s].mse_upper_efficient = bounds[s].mse_upper_efficient;
  }
  return result;
}

IrlsTrace run_traces(const ExperimentSpec& spec, const Problem& problem, int snr_index,
                     int signal_index) {
  if (snr_index < 0 || static_cast<std::size_t>(snr_index) >= spec.snr_db.size()) {
    throw std::invalid_argument("run_traces: SNR index out of range");
  }
  const double sigma = sigma_for_snr(problem.frame, problem.x, spec.snr_db[snr_index]);
  const MeasurementVector y = noisy_measurements(spec, problem, sigma, signal_index, snr_index, 0);
  return solve(problem.frame, y, trial_config(spec, sigma, signal_index, snr_index, 0), problem.x)
      .trace;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_db(double v) { return 10.0 * std::log10(v); }

void write_trials_csv(const std::vector<TrialRecord>& trials, std::ostream& out) {
  out << "snr_db,trial,status,iters,mse,crlb_trace,final_residual\n";
  for (const auto& t : trials) {
    out << format_double(t.snr_db) << ',' << t.trial << ',' << to_string(t.status) << ',' << t.iters
        << ',' << format_double(t.mse) << ',' << format_double(t.crlb_trace) << ','
        << format_double(t.final_residual) << '\n';
  }
}

void write_aggregate_csv(const std::vector<Aggregate>& aggregates, std::ostream& out) {
  out << "snr_db,mse,bias_sq,variance,crlb_trace,mean_iters\n";
  for (const auto& a : aggregates) {
    out << format_double(a.snr_db) << ',' << format_double(a.mse) << ',' << format_double(a.bias_sq)
        << ',' << format_double(a.variance) << ',' << format_double(a.crlb_trace) << ','
        << format_double(a.mean_iters) << '\n';
  }
}

void write_aggregate_db_csv(const std::vector<Aggregate>& aggregates, std::ostream& out) {
  out << "snr_db,mse_db,bias_sq_db,variance_db,crlb_trace_db,mse_upper_efficient_db\n";
  for (const auto& a : aggregates) {
    out << format_double(a.snr_db) << ',' << format_double(to_db(a.mse)) << ','
        << format_double(to_db(a.bias_sq)) << ',' << format_double(to_db(a.variance)) << ','
        << format_double(to_db(a.crlb_trace)) << ','
        << (a.mse_upper_efficient ? format_double(to_db(*a.mse_upper_efficient)) : "") << '\n';
  }
}

void write_trace_csv(const IrlsTrace& trace, std::ostream& out) {
  out << "iter,lambda,mu,residual_db,min_eig,err_db,frob_err_db\n";
  for (const auto& r : trace.records) {
    out << r.iter << ',' << format_double(r.lambda) << ',' << format_double(r.mu) << ','
        << format_double(to_db(r.residual_Xt)) << ',' << format_double(r.min_eig_Xt) << ','
        << (r.err_to_truth ? format_double(to_db(*r.err_to_truth)) : "") << ','
        << (r.frob_err_rank1 ? format_double(to_db(*r.frob_err_rank1)) : "") << '\n';
  }
}

void write_manifest(const ExperimentSpec& spec, const Problem& problem, const SweepResult& result,
                    std::ostream& out) {
  out << "version=" << PHASELESS_VERSION << '\n';
  out << "eigen_version=" << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.'
      << EIGEN_MINOR_VERSION << '\n';
  out << "n=" << spec.n << '\n';
  out << "m=" << spec.m << '\n';
  out << "redundancy=" << format_double(static_cast<double>(spec.m) / static_cast<double>(spec.n)) << '\n';
  out << "snr_db=";
  for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
    out << (i ? ";" : "") << format_double(spec.snr_db[i]);
  }
  out << '\n';
  out << "trials=" << spec.trials << '\n';
  out << "seed=" << spec.master_seed << '\n';
  out << "signals=" << spec.signals << '\n';
  out << "threads=" << spec.threads << '\n';
  out << "rho=" << format_double(spec.irls.rho) << '\n';
  out << "gamma=" << format_double(spec.irls.gamma) << '\n';
  out << "lambda_min=" << format_double(spec.irls.lambda_min) << '\n';
  out << "mu_min=" << format_double(spec.irls.mu_min) << '\n';
  out << "kappa=" << format_double(spec.irls.kappa) << '\n';
  out << "max_iters=" << spec.irls.max_iters << '\n';
  out << "init=" << to_string(spec.irls.init) << '\n';
  out << "stop=" << to_string(spec.irls.stop) << '\n';
  out << "z0=true_direction\n";
  out << "crlb_tol=1e-10\n";
  out << "frame_min_singular_value=" << format_double(problem.frame.min_singular_value()) << '\n';
  out << "signal_norm=" << format_double(problem.x.norm()) << '\n';
  if (result.stability) {
    out << "a0_iters=" << spec.a0_iters << '\n';
    write_key_values(*result.stability, out, "stability.");
  }
}

}  // namespace phaseless
