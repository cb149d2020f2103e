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

// Brute-force baselines. Nothing in here calls the KKT machinery; the
// solvers are checked against these, never the other way around.

#ifndef POISSON_MAC_ORACLE_HPP_
#define POISSON_MAC_ORACLE_HPP_

#include <functional>
#include <span>

#include "poisson_mac/channel.hpp"

namespace poisson_mac {

class MisoConfig;

namespace oracle {

/// Uniform grid over [0,1]^2 followed by `refine_rounds` local passes, each
/// shrinking the step by 10 around the incumbent(s).
struct GridSpec {
  double step = 1e-2;
  int refine_rounds = 3;

  void validate() const;
  double final_step() const;
};

struct GridResult {
  double value = 0.0;
  DutyPair duty;
  /// Estimated gradient bound over the box (coarse-grid slopes x 1.5).
  double lipschitz = 0.0;
  /// Resolution bound lipschitz * final step.
  double error_bound = 0.0;
};

using Objective2 = std::function<double(const DutyPair&)>;

/// Maximizes an arbitrary objective on [0,1]^2. Every coarse-grid local
/// maximum among the best few is refined, so well-separated competing peaks
/// are each resolved before the winner is chosen.
GridResult grid_maximize(const Objective2& objective, const GridSpec& spec);

/// max over the box of mutual_info / tau.
GridResult grid_capacity(const ChannelParams& params, const GridSpec& spec);

/// Central differences of mutual_info; the duty pair must sit at least h
/// away from the box boundary.
Vector2<double> fd_gradient(const ChannelParams& params, const DutyPair& duty,
                            double h);
Matrix2<double> fd_hessian(const ChannelParams& params, const DutyPair& duty,
                           double h);

struct EnumerationResult {
  double best = 0.0;
  /// Largest objective change between neighbouring grid samples.
  double resolution_bound = 0.0;
};

/// Exhaustive search over joint on/off PMFs of users with at most two
/// antennas each, for fixed per-antenna duty cycles. With two antennas the
/// marginals leave one free parameter (the both-on mass), gridded at `step`.
EnumerationResult miso_pmf_enumeration(const MisoConfig& config,
                                       std::span<const double> duties_user1,
                                       std::span<const double> duties_user2,
                                       double step);

}  // namespace oracle
}  // namespace poisson_mac

#endif  // POISSON_MAC_ORACLE_HPP_
