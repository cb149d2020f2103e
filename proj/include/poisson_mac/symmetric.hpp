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

// Equal peak rates, a1 = a2 = a.
//
// On a line mu1 + mu2 = 2 mu_s the objective is Schur-concave where
// p_hat >= 1/(1 + e^G(a)) and Schur-convex below. For a < A_th the whole
// box lies on the concave side and the optimum is on the diagonal.

#ifndef POISSON_MAC_SYMMETRIC_HPP_
#define POISSON_MAC_SYMMETRIC_HPP_

#include <optional>
#include <string_view>

#include "poisson_mac/channel.hpp"

namespace poisson_mac {

/// (2 h(p2) - h(p1) - h(p4)) / (2 p2 - p1 - p4) for the symmetric channel.
double big_g(double a, double lambda0, double tau);

/// Peak rate at which G(a) = ln((1-p4)/p4). nullopt when no root exists
/// with 2a + lambda0 <= ln2/tau.
std::optional<double> a_threshold(double lambda0, double tau);

struct BoundaryQuantities {
  /// Diagonal point where p_hat(mu, mu) reaches the level.
  double mu_s_prime = 0.0;
  /// Line parameter where the corner (2 mu_s, 0) reaches the level.
  double mu_s_star = 0.0;
  /// 1 / (1 + e^G(a)).
  double level = 0.0;
};

/// nullopt when a < A_th (no split) or A_th is not defined in regime.
std::optional<BoundaryQuantities> boundary_quantities(double a, double lambda0,
                                                      double tau);

enum class SchurSide { ConcaveSide, ConvexSide, Global };
enum class SchurMode { GloballySchurConcave, SplitRegions };

std::string_view to_string(SchurSide s);
std::string_view to_string(SchurMode m);

SchurSide schur_classify(double a, double lambda0, double tau,
                         const DutyPair& duty);

/// Unique mu in (0,1) with mu = g_mac(mu).
double symmetric_fixed_point(double a, double lambda0, double tau);

/// d mu1 / d mu2 along the level set p_hat = level through `duty`.
double boundary_slope(double a, double lambda0, double tau,
                      const DutyPair& duty);

/// Maximizer of I over {mu1 + mu2 = 2 mu_s, mu1 >= mu2} in closed form:
/// the diagonal, the box edge, or the point where the line crosses the
/// level set.
DutyPair line_maximizer(double a, double lambda0, double tau, double mu_s);

struct SymmetricReport {
  double g_of_a = 0.0;
  std::optional<double> a_th;
  std::optional<BoundaryQuantities> boundary;
  double fixed_point = 0.0;
  double capacity = 0.0;  // nats per unit time
  SchurMode schur_mode = SchurMode::GloballySchurConcave;
  bool regime_ok = true;
};

SymmetricReport analyze_symmetric(double a, double lambda0, double tau);

}  // namespace poisson_mac

#endif  // POISSON_MAC_SYMMETRIC_HPP_
