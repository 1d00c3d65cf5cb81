// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/transition.hpp"

#include "lemtrap/error.hpp"

#include <cmath>
#include <limits>

namespace lemtrap {

CouplingSpec::CouplingSpec(Eigen::VectorXd f, Eigen::VectorXd g, NoiseKind kind, double correlation_time)
    : f_(std::move(f)), g_(std::move(g)), kind_(kind), correlation_time_(correlation_time) {
  constexpr const char* where = "transition.CouplingSpec";
  if (f_.size() != g_.size()) {
    throw Error(ErrorKind::kDimension, where,
                "f has length " + std::to_string(f_.size()) + ", g has length " + std::to_string(g_.size()));
  }
  if (f_.size() < 1) throw Error(ErrorKind::kDimension, where, "amplitude vectors are empty");
  if (!f_.allFinite() || !g_.allFinite()) throw Error(ErrorKind::kValidation, where, "amplitudes must be finite");
  if ((f_.array() < 0.0).any() || (g_.array() < 0.0).any()) {
    throw Error(ErrorKind::kValidation, where, "amplitudes must be non-negative");
  }
  if (kind_ == NoiseKind::kOrnsteinUhlenbeck && !(correlation_time_ > 0.0 && std::isfinite(correlation_time_))) {
    throw Error(ErrorKind::kValidation, where, "correlation time must be positive");
  }
}

CouplingSpec CouplingSpec::uniform(int n, double f, double g, NoiseKind kind, double correlation_time) {
  if (n < 1) throw Error(ErrorKind::kDimension, "transition.CouplingSpec", "n must be at least 1");
  return CouplingSpec(Eigen::VectorXd::Constant(n, f), Eigen::VectorXd::Constant(n, g), kind, correlation_time);
}

double CouplingSpec::scale() const noexcept { return std::max(f_.maxCoeff(), g_.maxCoeff()); }

double CouplingSpec::spectral_density(double omega) const noexcept {
  if (kind_ == NoiseKind::kWhite) return 1.0;
  const double wt = omega * correlation_time_;
  return 2.0 * correlation_time_ / (1.0 + wt * wt);
}

CouplingSpec CouplingSpec::scaled(double f_factor, double g_factor) const {
  return CouplingSpec(f_ * f_factor, g_ * g_factor, kind_, correlation_time_);
}

RateReport matrix_element(const DressedState& ground, const DressedState& lem, const CouplingSpec& coupling) {
  constexpr const char* where = "transition.matrix_element";
  if (ground.eigenindex == lem.eigenindex) {
    throw Error(ErrorKind::kDomain, where, "ground and metastable states share eigenindex " +
                                               std::to_string(ground.eigenindex));
  }
  if (ground.amplitudes.size() != lem.amplitudes.size()) {
    throw Error(ErrorKind::kDimension, where, "amplitude tables differ in size");
  }
  const int n = ground.anchor.width();
  if (coupling.n() != n) throw Error(ErrorKind::kDimension, where, "coupling length differs from n");

  const Eigen::VectorXd& a = ground.amplitudes;
  const Eigen::VectorXd& b = lem.amplitudes;
  const Eigen::Index dim = a.size();

  RateReport report;
  report.ground_anchor = ground.anchor;
  report.lem_anchor = lem.anchor;
  report.channels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << i;
    double z_term = 0.0;
    double x_term = 0.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
      const double ab = a(x) * b(x);
      z_term += (x & mask) ? ab : -ab;
      x_term += a(x) * b(x ^ mask);
    }
    report.channels.push_back({i, coupling.f()(i) * z_term, coupling.g()(i) * x_term});
  }
  for (const auto& channel : report.channels) {
    report.matrix_element += channel.sigma_z;
    report.matrix_element += channel.sigma_x;
  }
  report.coupling_scale = coupling.scale();
  if (report.coupling_scale > 0.0) {
    const double normalized = report.matrix_element / report.coupling_scale;
    report.rate_ratio = normalized * normalized;
  }
  return report;
}

BoundVerdict check_bound(const RateReport& report, const ClusterParams& params, const CouplingSpec& coupling,
                         std::optional<double> typical_spacing) {
  constexpr const char* where = "transition.check_bound";
  if (coupling.n() != params.n()) throw Error(ErrorKind::kDimension, where, "coupling length differs from n");
  BoundVerdict verdict;
  verdict.typical_spacing = typical_spacing ? *typical_spacing : typical_level_spacing(params, report.ground_anchor);
  if (!(verdict.typical_spacing > 0.0)) {
    throw Error(ErrorKind::kDegeneracy, where, "typical level spacing is not positive");
  }
  const double c_typ = params.tunneling().cwiseAbs().maxCoeff();
  const double g_typ = coupling.g().maxCoeff();
  verdict.ratio = std::max(c_typ, g_typ) / verdict.typical_spacing;
  verdict.bound = std::pow(verdict.ratio, params.n());
  verdict.satisfied = report.rate_ratio <= verdict.bound * kBoundSafetyFactor;
  verdict.margin = report.rate_ratio > 0.0 ? std::log10(verdict.bound / report.rate_ratio)
                                           : std::numeric_limits<double>::infinity();
  return verdict;
}

double lifetime_extension(int n, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorKind::kDomain, "transition.lifetime_extension",
                "ratio must lie in (0, 1); ratio >= 1 is outside the perturbative regime");
  }
  if (n < 1) throw Error(ErrorKind::kDomain, "transition.lifetime_extension", "n must be positive");
  return n * std::log10(1.0 / ratio);
}

}  // namespace lemtrap
