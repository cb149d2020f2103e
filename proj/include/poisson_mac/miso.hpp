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

// Users with several transmitters. A user's joint on/off state is an
// antenna subset, indexed by a bitmask (bit j set <=> antenna j on).

#ifndef POISSON_MAC_MISO_HPP_
#define POISSON_MAC_MISO_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "poisson_mac/siso.hpp"

namespace poisson_mac {

class MisoConfig {
 public:
  static constexpr int kMaxAntennas = 16;

  MisoConfig(Eigen::VectorXd peaks_user1, Eigen::VectorXd peaks_user2,
             double lambda0, double tau);

  const Eigen::VectorXd& peaks(int user) const {
    return user == 1 ? peaks1_ : peaks2_;
  }
  int antennas(int user) const { return static_cast<int>(peaks(user).size()); }
  double lambda0() const { return lambda0_; }
  double tau() const { return tau_; }
  double total_peak(int user) const { return peaks(user).sum(); }

  bool in_regime() const;
  /// Single-antenna channel with each user's peaks summed.
  ChannelParams aggregated() const;

 private:
  Eigen::VectorXd peaks1_;
  Eigen::VectorXd peaks2_;
  double lambda0_;
  double tau_;
};

/// Distribution of one user's antenna subset; masses has 2^J entries.
struct JointPmf {
  Eigen::VectorXd masses;

  int antennas() const;
  /// Per-antenna on-probabilities.
  Eigen::VectorXd marginals() const;
  /// Throws std::invalid_argument if not a PMF over 2^J subsets.
  void validate(double tol = 1e-9) const;
};

/// Staircase PMF supported on a nested chain of subsets: antennas are
/// switched on in order of decreasing duty cycle.
struct NuPmf {
  std::vector<int> order;          // antenna indices, duty descending
  std::vector<unsigned> support;   // J+1 nested subset masks, empty first
  Eigen::VectorXd masses;          // J+1 masses

  JointPmf to_joint() const;
};

NuPmf nu_pmf(std::span<const double> duties);

/// PMF that switches all antennas together: {empty: 1-mu, all: mu}.
JointPmf aligned_pmf(int antennas, double mu);

/// Precomputed subset hit probabilities for repeated objective evaluation.
class MisoObjective {
 public:
  explicit MisoObjective(const MisoConfig& config);

  /// h(sum q1 q2 r) - sum q1 q2 h(r), nats per slot.
  double operator()(const JointPmf& q1, const JointPmf& q2) const;

  const Eigen::MatrixXd& hit_table() const { return hits_; }

 private:
  int antennas1_;
  int antennas2_;
  Eigen::MatrixXd hits_;      // r(i1, i2)
  Eigen::MatrixXd entropies_; // h(r(i1, i2))
};

double miso_mutual_info(const MisoConfig& config, const JointPmf& q1,
                        const JointPmf& q2);

struct MisoReport {
  SolveReport siso;  // solution of the aggregated channel
  double capacity = 0.0;
  std::vector<double> duties_user1;
  std::vector<double> duties_user2;
  JointPmf pmf_user1;
  JointPmf pmf_user2;
  bool regime_ok = true;
};

MisoReport solve_miso(const MisoConfig& config);

}  // namespace poisson_mac

#endif  // POISSON_MAC_MISO_HPP_
