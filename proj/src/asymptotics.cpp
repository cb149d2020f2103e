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

#include "poisson_mac/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "poisson_mac/siso.hpp"

namespace poisson_mac {

void ContinuousParams::validate() const {
  auto check = [](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(std::string(field) +
                                  " must be finite and strictly positive");
    }
  };
  check(a1, "a1");
  check(a2, "a2");
  check(lambda0, "lambda0");
}

double cont_mutual_info_rate(const ContinuousParams& cp, const DutyPair& d) {
  const double m1 = d.mu1, m2 = d.mu2;
  const double mean = m1 * cp.a1 + m2 * cp.a2 + cp.lambda0;
  return m1 * m2 * phi(cp.a1 + cp.a2 + cp.lambda0) +
         (1.0 - m1) * m2 * phi(cp.a2 + cp.lambda0) +
         m1 * (1.0 - m2) * phi(cp.a1 + cp.lambda0) +
         (1.0 - m1) * (1.0 - m2) * phi(cp.lambda0) - phi(mean);
}

double cont_f(const ContinuousParams& cp, double mu1) {
  const double ratio = cp.a1 / cp.a2;
  const double f0 = phi(cp.lambda0), f1 = phi(cp.a1 + cp.lambda0);
  const double f2 = phi(cp.a2 + cp.lambda0);
  const double f12 = phi(cp.a1 + cp.a2 + cp.lambda0);
  const double intercept = (f0 - f1 - ratio * (f0 - f2)) / (f0 - f2 - f1 + f12);
  return ratio * mu1 + intercept;
}

double cont_g(const ContinuousParams& cp, double mu1) {
  const double f0 = phi(cp.lambda0), f1 = phi(cp.a1 + cp.lambda0);
  const double f2 = phi(cp.a2 + cp.lambda0);
  const double f12 = phi(cp.a1 + cp.a2 + cp.lambda0);
  const double expo =
      -1.0 - mu1 / cp.a2 * (f1 - f12) - (1.0 - mu1) / cp.a2 * (f0 - f2);
  return std::exp(expo) / cp.a2 - (mu1 * cp.a1 + cp.lambda0) / cp.a2;
}

oracle::GridResult cont_capacity(const ContinuousParams& cp,
                                 const oracle::GridSpec& spec) {
  cp.validate();
  return oracle::grid_maximize(
      [&](const DutyPair& d) { return cont_mutual_info_rate(cp, d); }, spec);
}

std::vector<ConvergenceRow> convergence_report(
    const ContinuousParams& cp, std::span<const double> taus,
    const oracle::GridSpec& spec) {
  cp.validate();
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (!(taus[k] > 0.0)) throw std::invalid_argument("tau must be > 0");
    if (k > 0 && !(taus[k] < taus[k - 1])) {
      throw std::invalid_argument("tau list must be strictly decreasing");
    }
    if (!ChannelParams(cp.a1, cp.a2, cp.lambda0, taus[k]).in_regime()) {
      throw std::invalid_argument("tau out of regime");
    }
  }

  const oracle::GridResult reference = cont_capacity(cp, spec);
  const double alpha1 = alpha_cont(cp.a1 / cp.lambda0);
  const double alpha2 = alpha_cont(cp.a2 / cp.lambda0);

  std::vector<ConvergenceRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const SolveReport s = solve(ChannelParams(cp.a1, cp.a2, cp.lambda0, tau));
    ConvergenceRow row;
    row.tau = tau;
    row.capacity = s.capacity;
    row.duty = s.optimum;
    row.cont_capacity = reference.value;
    row.cont_duty = reference.duty;
    row.gap = std::abs(s.capacity - reference.value) / reference.value;
    row.single_user_gap =
        std::max(std::abs(single_user_duty(cp.a1, cp.lambda0, tau) - alpha1),
                 std::abs(single_user_duty(cp.a2, cp.lambda0, tau) - alpha2));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace poisson_mac
