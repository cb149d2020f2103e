// Copyright 2026 The poisson-mac Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poisson_mac/miso.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace poisson_mac {

namespace {

// The joint hit table has 2^(J1+J2) entries.
constexpr int kMaxTableBits = 24;

void check_peaks(const Eigen::VectorXd& peaks, const char* field) {
  if (peaks.size() < 1 || peaks.size() > MisoConfig::kMaxAntennas) {
    throw std::invalid_argument(std::string(field) +
                                ": need between 1 and 16 antennas");
  }
  for (Eigen::Index j = 0; j < peaks.size(); ++j) {
    if (!(std::isfinite(peaks(j)) && peaks(j) > 0.0)) {
      throw std::invalid_argument(std::string(field) +
                                  ": peaks must be finite and > 0");
    }
  }
}

// Sum of peaks(j) over the bits of every mask.
Eigen::VectorXd subset_sums(const Eigen::VectorXd& peaks) {
  const Eigen::Index n = Eigen::Index{1} << peaks.size();
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  for (Eigen::Index mask = 1; mask < n; ++mask) {
    const int low = std::countr_zero(static_cast<unsigned>(mask));
    sums(mask) = sums(mask & (mask - 1)) + peaks(low);
  }
  return sums;
}

}  // namespace

MisoConfig::MisoConfig(Eigen::VectorXd peaks_user1, Eigen::VectorXd peaks_user2,
                       double lambda0, double tau)
    : peaks1_(std::move(peaks_user1)),
      peaks2_(std::move(peaks_user2)),
      lambda0_(lambda0),
      tau_(tau) {
  check_peaks(peaks1_, "peaks_user1");
  check_peaks(peaks2_, "peaks_user2");
  if (!(std::isfinite(lambda0_) && lambda0_ > 0.0)) {
    throw std::invalid_argument("lambda0 must be finite and > 0");
  }
  if (!(std::isfinite(tau_) && tau_ > 0.0)) {
    throw std::invalid_argument("tau must be finite and > 0");
  }
}

bool MisoConfig::in_regime() const { return aggregated().in_regime(); }

ChannelParams MisoConfig::aggregated() const {
  return ChannelParams(total_peak(1), total_peak(2), lambda0_, tau_);
}

int JointPmf::antennas() const {
  return std::countr_zero(static_cast<unsigned>(masses.size()));
}

Eigen::VectorXd JointPmf::marginals() const {
  const int j_count = antennas();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(j_count);
  for (Eigen::Index mask = 0; mask < masses.size(); ++mask) {
    for (int j = 0; j < j_count; ++j) {
      if (mask & (Eigen::Index{1} << j)) out(j) += masses(mask);
    }
  }
  return out;
}

void JointPmf::validate(double tol) const {
  const auto n = static_cast<unsigned>(masses.size());
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("pmf: size must be 2^J with J >= 1");
  }
  if (!masses.allFinite() || masses.minCoeff() < -tol) {
    throw std::invalid_argument("pmf: masses must be finite and >= 0");
  }
  if (std::abs(masses.sum() - 1.0) > tol) {
    throw std::invalid_argument("pmf: masses must sum to 1");
  }
}

JointPmf NuPmf::to_joint() const {
  JointPmf q;
  q.masses = Eigen::VectorXd::Zero(Eigen::Index{1} << order.size());
  for (std::size_t k = 0; k < support.size(); ++k) {
    q.masses(support[k]) += masses(static_cast<Eigen::Index>(k));
  }
  return q;
}

NuPmf nu_pmf(std::span<const double> duties) {
  if (duties.empty() ||
      duties.size() > static_cast<std::size_t>(MisoConfig::kMaxAntennas)) {
    throw std::invalid_argument("duties: need between 1 and 16 antennas");
  }
  for (double mu : duties) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw std::invalid_argument("duties: each must lie in [0, 1]");
    }
  }
  const int j_count = static_cast<int>(duties.size());
  NuPmf nu;
  nu.order.resize(duties.size());
  std::iota(nu.order.begin(), nu.order.end(), 0);
  std::stable_sort(nu.order.begin(), nu.order.end(),
                   [&](int a, int b) { return duties[a] > duties[b]; });

  nu.support.resize(duties.size() + 1);
  nu.masses.resize(j_count + 1);
  nu.support[0] = 0;
  nu.masses(0) = 1.0 - duties[nu.order[0]];
  for (int k = 1; k <= j_count; ++k) {
    nu.support[k] = nu.support[k - 1] | (1u << nu.order[k - 1]);
    const double next = k < j_count ? duties[nu.order[k]] : 0.0;
    nu.masses(k) = duties[nu.order[k - 1]] - next;
  }
  return nu;
}

JointPmf aligned_pmf(int antennas, double mu) {
  if (antennas < 1 || antennas > MisoConfig::kMaxAntennas) {
    throw std::invalid_argument("antennas: must lie in [1, 16]");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("mu: must lie in [0, 1]");
  }
  JointPmf q;
  q.masses = Eigen::VectorXd::Zero(Eigen::Index{1} << antennas);
  q.masses(0) = 1.0 - mu;
  q.masses(q.masses.size() - 1) += mu;
  return q;
}

MisoObjective::MisoObjective(const MisoConfig& config)
    : antennas1_(config.antennas(1)), antennas2_(config.antennas(2)) {
  if (antennas1_ + antennas2_ > kMaxTableBits) {
    throw std::invalid_argument(
        "too many antennas in total for the joint table (max 24)");
  }
  const Eigen::VectorXd s1 = subset_sums(config.peaks(1));
  const Eigen::VectorXd s2 = subset_sums(config.peaks(2));
  hits_.resize(s1.size(), s2.size());
  for (Eigen::Index i = 0; i < s1.size(); ++i) {
    for (Eigen::Index j = 0; j < s2.size(); ++j) {
      hits_(i, j) = hit_prob(s1(i) + s2(j) + config.lambda0(), config.tau());
    }
  }
  entropies_ = hits_.unaryExpr([](double p) { return binary_entropy(p); });
}

double MisoObjective::operator()(const JointPmf& q1, const JointPmf& q2) const {
  q1.validate();
  q2.validate();
  if (q1.antennas() != antennas1_ || q2.antennas() != antennas2_) {
    throw std::invalid_argument("pmf: antenna count does not match config");
  }
  const double mixed = std::clamp(q1.masses.dot(hits_ * q2.masses), 0.0, 1.0);
  return binary_entropy(mixed) - q1.masses.dot(entropies_ * q2.masses);
}

double miso_mutual_info(const MisoConfig& config, const JointPmf& q1,
                        const JointPmf& q2) {
  return MisoObjective(config)(q1, q2);
}

MisoReport solve_miso(const MisoConfig& config) {
  MisoReport report;
  report.siso = solve(config.aggregated());
  report.capacity = report.siso.capacity;
  report.regime_ok = config.in_regime();
  const double mu1 = report.siso.optimum.mu1;
  const double mu2 = report.siso.optimum.mu2;
  report.duties_user1.assign(config.antennas(1), mu1);
  report.duties_user2.assign(config.antennas(2), mu2);
  report.pmf_user1 = aligned_pmf(config.antennas(1), mu1);
  report.pmf_user2 = aligned_pmf(config.antennas(2), mu2);
  return report;
}

}  // namespace poisson_mac
