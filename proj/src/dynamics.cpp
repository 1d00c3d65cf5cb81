// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/dynamics.hpp"

#include "lemtrap/error.hpp"
#include "lemtrap/fit.hpp"
#include "lemtrap/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace lemtrap {

namespace {

/// Neumaier compensated sum; order of addition is the caller's.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Unit-variance noise source for one channel.
class NoiseProcess {
 public:
  NoiseProcess(NoiseKind kind, double correlation_time, double time_step, std::mt19937_64& rng)
      : kind_(kind), rng_(&rng) {
    if (kind_ == NoiseKind::kOrnsteinUhlenbeck) {
      decay_ = std::exp(-time_step / correlation_time);
      kick_ = std::sqrt(1.0 - decay_ * decay_);
      value_ = normal_(*rng_);
    } else {
      kick_ = 1.0 / std::sqrt(time_step);
      value_ = kick_ * normal_(*rng_);
    }
  }

  double value() const { return value_; }

  void advance() {
    if (kind_ == NoiseKind::kOrnsteinUhlenbeck) {
      value_ = decay_ * value_ + kick_ * normal_(*rng_);
    } else {
      value_ = kick_ * normal_(*rng_);
    }
  }

 private:
  NoiseKind kind_;
  std::mt19937_64* rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double decay_ = 0.0;
  double kick_ = 0.0;
  double value_ = 0.0;
};

struct Channel {
  int spin;
  bool diagonal;  ///< sz channel when true, sx otherwise
  double amplitude;
};

/// Everything a trajectory needs that does not depend on the trajectory.
struct Problem {
  int n = 0;
  std::size_t dim = 0;
  std::vector<double> base_diagonal;  ///< E(x) - reference energy
  std::vector<double> tunneling;
  std::vector<Channel> channels;
  std::vector<double> ground;  ///< real eigenvectors
  std::vector<double> lem;
  double splitting = 0.0;
  double time_step = 0.0;
  std::int64_t steps = 0;
  std::int64_t stride = 1;
  std::size_t samples = 0;
  NoiseKind kind = NoiseKind::kWhite;
  double correlation_time = 1.0;
};

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Runs one trajectory and writes rho_{X'Y'}(t_s) (rotation removed) into `out`.
void run_trajectory(const Problem& p, std::uint64_t seed, std::span<std::complex<double>> out) {
  const auto& k = kernels::active();
  std::mt19937_64 rng(seed);

  std::vector<NoiseProcess> noise;
  noise.reserve(p.channels.size());
  for (std::size_t c = 0; c < p.channels.size(); ++c) {
    noise.emplace_back(p.kind, p.correlation_time, p.time_step, rng);
  }

  const std::size_t dim = p.dim;
  std::vector<double> re(dim), im(dim);
  const double root_half = std::sqrt(0.5);
  for (std::size_t x = 0; x < dim; ++x) {
    re[x] = root_half * (p.ground[x] + p.lem[x]);
    im[x] = 0.0;
  }

  std::vector<double> diag(dim), flip(p.tunneling);
  std::vector<double> stage_re(dim), stage_im(dim), h_re(dim), h_im(dim), next_re(dim), next_im(dim);

  auto record = [&](std::int64_t step) {
    const std::complex<double> a_ground(k.dot(p.ground, re), k.dot(p.ground, im));
    const std::complex<double> a_lem(k.dot(p.lem, re), k.dot(p.lem, im));
    const double t = static_cast<double>(step) * p.time_step;
    const std::complex<double> rotation = std::polar(1.0, -p.splitting * t);
    out[static_cast<std::size_t>(step / p.stride)] = a_ground * std::conj(a_lem) * rotation;
  };

  // Stage derivative of psi = re + i im under -iH: (H im, -H re).
  auto derivative = [&](const std::vector<double>& in_re, const std::vector<double>& in_im) {
    k.apply_spin_hamiltonian(diag, flip, in_re, h_re);
    k.apply_spin_hamiltonian(diag, flip, in_im, h_im);
  };

  record(0);
  const double dt = p.time_step;
  for (std::int64_t step = 1; step <= p.steps; ++step) {
    std::copy(p.base_diagonal.begin(), p.base_diagonal.end(), diag.begin());
    std::copy(p.tunneling.begin(), p.tunneling.end(), flip.begin());
    for (std::size_t c = 0; c < p.channels.size(); ++c) {
      const Channel& ch = p.channels[c];
      const double strength = ch.amplitude * noise[c].value();
      if (ch.diagonal) {
        k.accumulate_parity(diag, strength, 1U << ch.spin);
      } else {
        flip[static_cast<std::size_t>(ch.spin)] += strength;
      }
    }

    // k1
    derivative(re, im);
    k.axpy(next_re, re, dt / 6.0, h_im);
    k.axpy(next_im, im, -dt / 6.0, h_re);
    k.axpy(stage_re, re, dt / 2.0, h_im);
    k.axpy(stage_im, im, -dt / 2.0, h_re);
    // k2
    derivative(stage_re, stage_im);
    k.axpy(next_re, next_re, dt / 3.0, h_im);
    k.axpy(next_im, next_im, -dt / 3.0, h_re);
    k.axpy(stage_re, re, dt / 2.0, h_im);
    k.axpy(stage_im, im, -dt / 2.0, h_re);
    // k3
    derivative(stage_re, stage_im);
    k.axpy(next_re, next_re, dt / 3.0, h_im);
    k.axpy(next_im, next_im, -dt / 3.0, h_re);
    k.axpy(stage_re, re, dt, h_im);
    k.axpy(stage_im, im, -dt, h_re);
    // k4
    derivative(stage_re, stage_im);
    k.axpy(re, next_re, dt / 6.0, h_im);
    k.axpy(im, next_im, -dt / 6.0, h_re);

    const double norm2 = k.dot(re, re) + k.dot(im, im);
    if (!(std::abs(norm2 - 1.0) <= kNormDriftLimit)) {
      std::ostringstream msg;
      msg << "norm drifted by " << norm2 - 1.0 << " in one step at t=" << static_cast<double>(step) * dt
          << "; reduce time_step";
      throw Error(ErrorKind::kStepSize, "dynamics.evolve_superposition", msg.str());
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t x = 0; x < dim; ++x) {
      re[x] *= inv;
      im[x] *= inv;
    }

    for (auto& process : noise) process.advance();
    if (step % p.stride == 0) record(step);
  }
}

void fit_decay(CoherenceTrace& trace) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t s = 1; s < trace.times.size(); ++s) {
    const double c = trace.coherence[s];
    if (c >= kFitWindowLow && c <= kFitWindowHigh) {
      xs.push_back(trace.times[s]);
      ys.push_back(std::log(c));
    }
  }
  trace.fit_points = static_cast<int>(xs.size());
  if (xs.size() >= 3) {
    const LineFit fit = fit_line(xs, ys);
    trace.fitted_rate = -fit.slope;
    trace.fit_quality = fit.r_squared;
    trace.status = FitStatus::kFitted;
    return;
  }
  if (trace.coherence.back() > kFitWindowHigh) {
    // Decay slower than exp(-rate T) reaching the window top.
    trace.fitted_rate = std::log(0.5 / kFitWindowHigh) / trace.total_time;
    trace.fit_quality = 0.0;
    trace.status = FitStatus::kUpperLimit;
    return;
  }
  throw Error(ErrorKind::kNumerical, "dynamics.evolve_superposition",
              "coherence crossed the fit window between fewer than three samples; raise sample_count "
              "or shorten total_time");
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("LEMTRAP_WORKERS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested > 0) return static_cast<unsigned>(requested);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 over (master, stream)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::pair<SpinConfiguration, SpinConfiguration> resolve_anchors(
    const ClusterParams& params, const std::optional<std::pair<SpinConfiguration, SpinConfiguration>>& anchors) {
  if (anchors) {
    if (anchors->first.width() != params.n() || anchors->second.width() != params.n()) {
      throw Error(ErrorKind::kDimension, "dynamics.resolve_anchors", "anchor width differs from n");
    }
    if (anchors->first == anchors->second) {
      throw Error(ErrorKind::kDomain, "dynamics.resolve_anchors", "anchors coincide");
    }
    return *anchors;
  }
  const LandscapeReport landscape = find_local_minima(params.with_tunneling(Eigen::VectorXd::Zero(params.n())));
  const auto lem = landscape.primary_lem();
  if (!lem) {
    throw Error(ErrorKind::kDomain, "dynamics.resolve_anchors",
                "the classical landscape has no local minimum besides the ground state; give anchors explicitly");
  }
  return {landscape.global_minimum, lem->config};
}

double predicted_decoherence_rate(const EigenSystem& eig, const DressedState& ground, const DressedState& lem,
                                  const CouplingSpec& noise) {
  const int n = eig.n();
  if (noise.n() != n) {
    throw Error(ErrorKind::kDimension, "dynamics.predicted_decoherence_rate", "noise length differs from n");
  }
  const auto dim = static_cast<Eigen::Index>(eig.dim());
  double rate = 0.0;

  auto escape = [&](const Eigen::VectorXd& column, int index, double amplitude, int spin, bool diagonal) {
    // O|psi> in the number basis, then its components along every eigenvector.
    Eigen::VectorXd applied(dim);
    const Eigen::Index mask = Eigen::Index{1} << spin;
    for (Eigen::Index x = 0; x < dim; ++x) {
      applied(x) = diagonal ? ((x & mask) ? column(x) : -column(x)) : column(x ^ mask);
    }
    const Eigen::VectorXd elements = eig.vectors.transpose() * applied;
    double out = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (k == index) continue;
      const double omega = eig.values(k) - eig.values(index);
      out += amplitude * amplitude * elements(k) * elements(k) * noise.spectral_density(omega);
    }
    return std::pair{out, elements(index)};
  };

  for (int spin = 0; spin < n; ++spin) {
    for (bool diagonal : {true, false}) {
      const double amplitude = diagonal ? noise.f()(spin) : noise.g()(spin);
      if (amplitude == 0.0) continue;
      const auto [out_ground, diag_ground] = escape(ground.amplitudes, ground.eigenindex, amplitude, spin, diagonal);
      const auto [out_lem, diag_lem] = escape(lem.amplitudes, lem.eigenindex, amplitude, spin, diagonal);
      const double contrast = amplitude * (diag_ground - diag_lem);
      rate += 0.5 * contrast * contrast * noise.spectral_density(0.0);
      rate += 0.5 * (out_ground + out_lem);
    }
  }
  return rate;
}

TrajectoryConfig default_trajectory_config(const ClusterParams& params, const EigenSystem& eig,
                                           const CouplingSpec& noise, std::uint64_t seed,
                                           std::optional<std::pair<SpinConfiguration, SpinConfiguration>> anchors) {
  const auto [ground_anchor, lem_anchor] = resolve_anchors(params, anchors);
  const double spacing = typical_level_spacing(params.with_tunneling(Eigen::VectorXd::Zero(params.n())), ground_anchor);

  TrajectoryConfig config;
  config.time_step = 0.01 / spacing;
  config.seed = seed;
  config.noise = noise;
  config.anchors = std::pair{ground_anchor, lem_anchor};

  const double max_time = static_cast<double>(kMaxSteps) * config.time_step;
  const double predicted =
      predicted_decoherence_rate(eig, dress(eig, ground_anchor), dress(eig, lem_anchor), noise);
  config.total_time = predicted > 0.0 ? std::min(20.0 / predicted, max_time) : 1e4 * config.time_step;
  return config;
}

CoherenceTrace evolve_superposition(const ClusterParams& params, const EigenSystem& eig,
                                    const TrajectoryConfig& config) {
  constexpr const char* where = "dynamics.evolve_superposition";
  const int n = params.n();
  if (n > kMaxDynamicsSpins) {
    throw Error(ErrorKind::kCapacity, where,
                "n=" + std::to_string(n) + " exceeds the trajectory budget n <= " + std::to_string(kMaxDynamicsSpins));
  }
  if (eig.dim() != params.dim()) throw Error(ErrorKind::kDimension, where, "eigensystem does not match params");
  if (config.noise.n() != n) throw Error(ErrorKind::kDimension, where, "noise length differs from n");
  if (config.trajectory_count < 1) throw Error(ErrorKind::kValidation, where, "trajectory_count must be >= 1");
  if (config.sample_count < 2) throw Error(ErrorKind::kValidation, where, "sample_count must be >= 2");
  if (!(config.time_step > 0.0) || !(config.total_time > 0.0)) {
    throw Error(ErrorKind::kValidation, where, "time_step and total_time must be positive");
  }
  const double spread = eig.values.maxCoeff() - eig.values.minCoeff();
  if (config.time_step * spread > kStabilityLimit) {
    std::ostringstream msg;
    msg << "time_step * eigenvalue spread = " << config.time_step * spread << " exceeds " << kStabilityLimit;
    throw Error(ErrorKind::kStepSize, where, msg.str());
  }
  const auto steps = static_cast<std::int64_t>(std::ceil(config.total_time / config.time_step - 1e-9));
  if (steps > kMaxSteps) {
    throw Error(ErrorKind::kCapacity, where,
                std::to_string(steps) + " steps exceed the budget of " + std::to_string(kMaxSteps));
  }

  const auto [ground_anchor, lem_anchor] = resolve_anchors(params, config.anchors);
  const DressedState ground = dress(eig, ground_anchor);
  const DressedState lem = dress(eig, lem_anchor);
  if (ground.eigenindex == lem.eigenindex) {
    throw Error(ErrorKind::kDomain, where, "both anchors dress onto the same eigenstate");
  }

  Problem p;
  p.n = n;
  p.dim = params.dim();
  const double reference = 0.5 * (ground.eigenvalue + lem.eigenvalue);
  p.base_diagonal = classical_energies(params);
  for (double& e : p.base_diagonal) e -= reference;
  p.tunneling = to_std(params.tunneling());
  for (int i = 0; i < n; ++i) {
    if (config.noise.f()(i) != 0.0) p.channels.push_back({i, true, config.noise.f()(i)});
    if (config.noise.g()(i) != 0.0) p.channels.push_back({i, false, config.noise.g()(i)});
  }
  p.ground = to_std(ground.amplitudes);
  p.lem = to_std(lem.amplitudes);
  p.splitting = lem.eigenvalue - ground.eigenvalue;
  p.time_step = config.time_step;
  p.steps = steps;
  p.stride = std::max<std::int64_t>(1, steps / (config.sample_count - 1));
  p.samples = static_cast<std::size_t>(steps / p.stride) + 1;
  p.kind = config.noise.kind();
  p.correlation_time = config.noise.correlation_time();

  const auto count = static_cast<std::size_t>(config.trajectory_count);
  std::vector<std::complex<double>> samples(count * p.samples);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t t = next++; t < count && !failed; t = next++) {
      try {
        run_trajectory(p, derive_seed(config.seed, t), std::span(samples).subspan(t * p.samples, p.samples));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CoherenceTrace trace;
  trace.splitting = p.splitting;
  trace.time_step = config.time_step;
  trace.total_time = static_cast<double>(steps) * config.time_step;
  trace.steps = steps;
  trace.trajectory_count = config.trajectory_count;
  trace.seed = config.seed;
  trace.ground_anchor = ground_anchor;
  trace.lem_anchor = lem_anchor;
  trace.times.resize(p.samples);
  trace.coherence.resize(p.samples);
  trace.coherence_error.resize(p.samples);
  const double inv_count = 1.0 / static_cast<double>(count);
  for (std::size_t s = 0; s < p.samples; ++s) {
    CompensatedSum sum_re, sum_im;
    for (std::size_t t = 0; t < count; ++t) {
      sum_re.add(samples[t * p.samples + s].real());
      sum_im.add(samples[t * p.samples + s].imag());
    }
    const std::complex<double> mean(sum_re.value() * inv_count, sum_im.value() * inv_count);
    CompensatedSum spread_sum;
    for (std::size_t t = 0; t < count; ++t) spread_sum.add(std::norm(samples[t * p.samples + s] - mean));
    trace.times[s] = static_cast<double>(static_cast<std::int64_t>(s) * p.stride) * config.time_step;
    trace.coherence[s] = std::abs(mean);
    trace.coherence_error[s] =
        count > 1 ? std::sqrt(spread_sum.value() / (static_cast<double>(count) * static_cast<double>(count - 1)))
                  : 0.0;
  }

  if (config.noise.silent()) {
    trace.status = FitStatus::kNoiseless;
    trace.fitted_rate = 0.0;
    trace.fit_quality = 1.0;
  } else {
    fit_decay(trace);
  }
  return trace;
}

Calibration calibrate(const CoherenceTrace& reference, const RateReport& reference_report) {
  constexpr const char* where = "dynamics.calibrate";
  if (reference.status != FitStatus::kFitted || reference.fit_quality < kMinFitQuality) {
    throw Error(ErrorKind::kNumerical, where, "reference trace has no usable exponential fit");
  }
  if (!(reference_report.rate_ratio > 0.0)) {
    throw Error(ErrorKind::kNumerical, where, "reference rate_ratio is zero");
  }
  return {reference.fitted_rate / reference_report.rate_ratio};
}

RateComparison rate_vs_prediction(const CoherenceTrace& trace, const RateReport& report,
                                  const Calibration& calibration) {
  RateComparison out;
  out.fitted_rate = trace.fitted_rate;
  out.predicted_rate = report.rate_ratio * calibration.rate_per_ratio;

  if (trace.status == FitStatus::kNoiseless) {
    out.ratio = out.predicted_rate == 0.0 ? 1.0 : 0.0;
    out.verdict = out.predicted_rate == 0.0 ? Consistency::kConsistent : Consistency::kInconsistent;
    return out;
  }
  if (trace.status != FitStatus::kFitted || trace.fit_quality < kMinFitQuality || !(out.predicted_rate > 0.0)) {
    out.ratio = out.predicted_rate > 0.0 ? out.fitted_rate / out.predicted_rate : 0.0;
    out.verdict = Consistency::kInconclusive;
    return out;
  }
  out.ratio = out.fitted_rate / out.predicted_rate;
  out.verdict = (out.ratio <= kConsistencyFactor && out.ratio >= 1.0 / kConsistencyFactor)
                    ? Consistency::kConsistent
                    : Consistency::kInconsistent;
  return out;
}

}  // namespace lemtrap
