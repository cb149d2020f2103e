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

// Continuous-time Poisson MAC (tau -> 0), used as a reference for the
// dead-time channel.

#ifndef POISSON_MAC_ASYMPTOTICS_HPP_
#define POISSON_MAC_ASYMPTOTICS_HPP_

#include <span>
#include <vector>

#include "poisson_mac/channel.hpp"
#include "poisson_mac/oracle.hpp"

namespace poisson_mac {

struct ContinuousParams {
  double a1;
  double a2;
  double lambda0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Limit of mutual_info / tau, nats per unit time.
double cont_mutual_info_rate(const ContinuousParams& cp, const DutyPair& duty);

/// Limits of f_mac and g_mac.
double cont_f(const ContinuousParams& cp, double mu1);
double cont_g(const ContinuousParams& cp, double mu1);

/// Grid maximum of cont_mutual_info_rate; default final step 1e-6.
oracle::GridResult cont_capacity(const ContinuousParams& cp,
                                 const oracle::GridSpec& spec = {1e-3, 3});

struct ConvergenceRow {
  double tau = 0.0;
  double capacity = 0.0;
  DutyPair duty;
  double cont_capacity = 0.0;
  DutyPair cont_duty;
  double gap = 0.0;              // |capacity - cont| / cont
  double single_user_gap = 0.0;  // max over users of |alpha_tau - alpha|
};

/// One row per tau; taus must be positive, strictly decreasing and in
/// regime for (a1, a2, lambda0).
std::vector<ConvergenceRow> convergence_report(
    const ContinuousParams& cp, std::span<const double> taus,
    const oracle::GridSpec& spec = {1e-3, 3});

}  // namespace poisson_mac

#endif  // POISSON_MAC_ASYMPTOTICS_HPP_
