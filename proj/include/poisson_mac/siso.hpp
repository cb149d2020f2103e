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

// Sum-rate capacity of the two-user single-antenna MAC.
//
// Stationary points with both users active lie on the intersection of a
// line mu2 = f(mu1) (obtained by eliminating the common log-odds factor
// from the two stationarity equations) and a curve mu2 = g(mu1) (the
// solution of dI/dmu2 = 0). In-regime the curve is strictly convex, so
// there are at most two such points. Adding the two closed-form
// single-user optima gives four candidates; the capacity is the best one.

#ifndef POISSON_MAC_SISO_HPP_
#define POISSON_MAC_SISO_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "poisson_mac/channel.hpp"
#include "poisson_mac/oracle.hpp"

namespace poisson_mac {

/// Coefficients of the both-active stationarity line mu1 U - mu2 V + W = 0.
struct UvwCoefficients {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

enum class Scenario { BothActive1, BothActive2, OnlyUser1, OnlyUser2 };
enum class Strategy { OnlyUser1, OnlyUser2, BothActive };

std::string_view to_string(Scenario s);
std::string_view to_string(Strategy s);
Strategy strategy_of(Scenario s);

struct Candidate {
  DutyPair duty;
  Scenario scenario = Scenario::BothActive1;
  double rate = 0.0;  // nats per unit time
  bool valid = false;
};

struct Intersection {
  DutyPair duty;
  bool valid = false;  // both coordinates in [0,1]
};

struct IntersectionSet {
  std::vector<Intersection> points;  // sorted by mu1
  /// False out of regime, where convexity of g is not guaranteed.
  bool reliable = true;

  int valid_count() const;
};

struct SufficiencyTests {
  bool prop1 = false;   // g(0) < f(0) and g(1) < f(1): single user suffices
  bool prop2a = false;  // dI/dmu2 > 0 at (mu1~, 0): user 1 alone not optimal
  bool prop2b = false;  // dI/dmu1 > 0 at (0, mu2~): user 2 alone not optimal
};

struct SolveReport {
  double capacity = 0.0;  // nats per unit time
  DutyPair optimum;
  Strategy strategy = Strategy::BothActive;
  Scenario winner = Scenario::BothActive1;
  std::vector<Candidate> candidates;  // always four, in Scenario order
  std::vector<Scenario> near_ties;    // candidates within kTieTolerance
  int intersections = 0;              // valid both-active intersections
  bool regime_ok = true;
  SufficiencyTests sufficiency;
  /// Grid cross-check, only run out of regime.
  std::optional<oracle::GridResult> oracle_check;

  static constexpr double kTieTolerance = 1e-12;
};

UvwCoefficients uvw(const ChannelParams& params);

double f_mac(const ChannelParams& params, double mu1);
double g_mac(const ChannelParams& params, double mu1);

IntersectionSet find_intersections(const ChannelParams& params);

/// Closed-form optimal duty cycle when a single user of peak rate `a`
/// transmits over background `lambda0`.
double single_user_duty(double a, double lambda0, double tau);

SufficiencyTests sufficiency_tests(const ChannelParams& params);

SolveReport solve(const ChannelParams& params);

/// How tau is chosen per cell of a strategy sweep.
struct TauRule {
  enum class Kind { Fixed, RegimeScaled };
  Kind kind = Kind::RegimeScaled;
  double value = 0.8;

  static TauRule fixed(double tau) { return {Kind::Fixed, tau}; }
  /// tau = c * ln2 / (a1 + a2 + lambda0).
  static TauRule regime_scaled(double c) { return {Kind::RegimeScaled, c}; }

  double tau_for(double a1, double a2, double lambda0) const;
};

/// Strategy labels indexed [i][j] <-> (a1_grid[i], a2_grid[j]).
struct StrategyGrid {
  std::vector<double> a1;
  std::vector<double> a2;
  std::vector<Strategy> labels;  // row-major

  Strategy at(std::size_t i, std::size_t j) const {
    return labels[i * a2.size() + j];
  }
};

StrategyGrid sweep_strategy_region(std::span<const double> a1_grid,
                                   std::span<const double> a2_grid,
                                   double lambda0, const TauRule& rule,
                                   unsigned threads = 1);

}  // namespace poisson_mac

#endif  // POISSON_MAC_SISO_HPP_
