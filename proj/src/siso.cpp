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

#include "poisson_mac/siso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"

namespace poisson_mac {

namespace {

// Everything f and g need, computed once per channel.
class MacCurves {
 public:
  explicit MacCurves(const ChannelParams& params) : hp_(hit_probs(params)) {
    h1_ = binary_entropy(hp_.p1);
    h2_ = binary_entropy(hp_.p2);
    h3_ = binary_entropy(hp_.p3);
    h4_ = binary_entropy(hp_.p4);
    const double d12 = hp_.p1 - hp_.p2, d34 = hp_.p3 - hp_.p4;
    const double d13 = hp_.p1 - hp_.p3, d24 = hp_.p2 - hp_.p4;
    // Sign chosen so that u, v > 0 and sign(w) = sign(a2 - a1); the line
    // mu1 u - mu2 v + w = 0 does not care.
    coeffs_.u = d12 * (h3_ - h4_) - d34 * (h1_ - h2_);
    coeffs_.v = d13 * (h2_ - h4_) - d24 * (h1_ - h3_);
    coeffs_.w = d24 * (h3_ - h4_) - d34 * (h2_ - h4_);
  }

  const UvwCoefficients& coeffs() const { return coeffs_; }

  double f(double mu1) const {
    return (coeffs_.u * mu1 + coeffs_.w) / coeffs_.v;
  }

  // Solves dI/dmu2 = 0 for mu2: p_hat must equal the probability whose
  // log-odds are the weighted entropy slope a_M.
  double g(double mu1) const {
    const double den =
        mu1 * (hp_.p1 - hp_.p3) + (1.0 - mu1) * (hp_.p2 - hp_.p4);
    const double slope =
        (mu1 * (h1_ - h3_) + (1.0 - mu1) * (h2_ - h4_)) / den;
    const double base = mu1 * hp_.p3 + (1.0 - mu1) * hp_.p4;
    return (logistic_of_log_odds(slope) - base) / den;
  }

  const HitProbs& hit() const { return hp_; }

 private:
  HitProbs hp_;
  double h1_, h2_, h3_, h4_;
  UvwCoefficients coeffs_;
};

double golden_section_minimize(const auto& fn, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = fn(c), fd = fn(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = fn(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = fn(d);
    }
  }
  // The bracketing loop can leave the true minimizer at an endpoint.
  double best = 0.5 * (lo + hi);
  double fbest = fn(best);
  for (double x : {lo, hi}) {
    const double fx = fn(x);
    if (fx < fbest) {
      best = x;
      fbest = fx;
    }
  }
  return best;
}

// Root of fn on [lo, hi] given fn(lo) and fn(hi) of opposite sign (or zero).
double bisect(const auto& fn, double lo, double hi) {
  double flo = fn(lo);
  if (flo == 0.0) return lo;
  if (fn(hi) == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(fn(lo)) <= std::abs(fn(hi)) ? lo : hi;
}

Strategy classify_duty(const DutyPair& d) {
  constexpr double kOff = 1e-12;
  if (d.mu1 <= kOff) return Strategy::OnlyUser2;
  if (d.mu2 <= kOff) return Strategy::OnlyUser1;
  return Strategy::BothActive;
}

int priority(Scenario s) {
  switch (s) {
    case Scenario::BothActive1:
    case Scenario::BothActive2:
      return 2;
    case Scenario::OnlyUser2:
      return 1;
    case Scenario::OnlyUser1:
      return 0;
  }
  return 0;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::BothActive1:
      return "BothActive1";
    case Scenario::BothActive2:
      return "BothActive2";
    case Scenario::OnlyUser1:
      return "OnlyUser1";
    case Scenario::OnlyUser2:
      return "OnlyUser2";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::OnlyUser1:
      return "OnlyUser1";
    case Strategy::OnlyUser2:
      return "OnlyUser2";
    case Strategy::BothActive:
      return "BothActive";
  }
  return "?";
}

Strategy strategy_of(Scenario s) {
  switch (s) {
    case Scenario::OnlyUser1:
      return Strategy::OnlyUser1;
    case Scenario::OnlyUser2:
      return Strategy::OnlyUser2;
    default:
      return Strategy::BothActive;
  }
}

int IntersectionSet::valid_count() const {
  return static_cast<int>(std::count_if(
      points.begin(), points.end(),
      [](const Intersection& p) { return p.valid; }));
}

UvwCoefficients uvw(const ChannelParams& params) {
  return MacCurves(params).coeffs();
}

double f_mac(const ChannelParams& params, double mu1) {
  return MacCurves(params).f(mu1);
}

double g_mac(const ChannelParams& params, double mu1) {
  return MacCurves(params).g(mu1);
}

IntersectionSet find_intersections(const ChannelParams& params) {
  const MacCurves curves(params);
  auto gap = [&](double mu1) { return curves.g(mu1) - curves.f(mu1); };

  IntersectionSet out;
  out.reliable = params.in_regime();

  // Usually g - f is convex: one minimizer, a root on each side at most.
  const double m = golden_section_minimize(gap, 0.0, 1.0, 1e-14);
  const double gm = gap(m);
  std::vector<double> roots;
  if (gm <= 0.0) {
    if (gm == 0.0) {
      roots.push_back(m);
    } else {
      if (m > 0.0 && gap(0.0) >= 0.0) roots.push_back(bisect(gap, 0.0, m));
      if (m < 1.0 && gap(1.0) >= 0.0) roots.push_back(bisect(gap, m, 1.0));
    }
  }
  // g is not convex for every a1 > a2, so sweep for sign changes the
  // bracket above missed.
  constexpr int kCells = 64;
  double x0 = 0.0, d0 = gap(0.0);
  for (int i = 1; i <= kCells; ++i) {
    const double x1 = static_cast<double>(i) / kCells, d1 = gap(x1);
    if ((d0 < 0.0) != (d1 < 0.0)) {
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](double r) {
        return r >= x0 - 1e-12 && r <= x1 + 1e-12;
      });
      if (!seen) roots.push_back(bisect(gap, x0, x1));
    }
    x0 = x1;
    d0 = d1;
  }
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    const DutyPair d{r, curves.f(r)};
    out.points.push_back({d, std::isfinite(d.mu2) && in_box(d)});
  }
  return out;
}

double single_user_duty(double a, double lambda0, double tau) {
  if (!(a > 0.0) || !(lambda0 > 0.0) || !(tau > 0.0)) {
    throw std::invalid_argument("single_user_duty: arguments must be > 0");
  }
  const double on = hit_prob(a + lambda0, tau);
  const double off = hit_prob(lambda0, tau);
  return (logistic_of_log_odds(entropy_slope(on, off)) - off) / (on - off);
}

SufficiencyTests sufficiency_tests(const ChannelParams& params) {
  const MacCurves curves(params);
  const HitProbs& hp = curves.hit();
  SufficiencyTests t;
  t.prop1 = curves.g(0.0) < curves.f(0.0) && curves.g(1.0) < curves.f(1.0);
  const double solo1 =
      single_user_duty(params.a1(), params.lambda0(), params.tau());
  const double solo2 =
      single_user_duty(params.a2(), params.lambda0(), params.tau());
  t.prop2a = grad_mutual_info(hp, DutyPair{solo1, 0.0})(1) > 0.0;
  t.prop2b = grad_mutual_info(hp, DutyPair{0.0, solo2})(0) > 0.0;
  return t;
}

SolveReport solve(const ChannelParams& params) {
  const HitProbs hp = hit_probs(params);
  const double tau = params.tau();

  SolveReport report;
  report.regime_ok = params.in_regime();

  const IntersectionSet cross = find_intersections(params);
  report.intersections = cross.valid_count();
  const Scenario both[2] = {Scenario::BothActive1, Scenario::BothActive2};
  for (int k = 0; k < 2; ++k) {
    Candidate c;
    c.scenario = both[k];
    if (k < static_cast<int>(cross.points.size()) && cross.points[k].valid) {
      c.duty = cross.points[k].duty;
      c.valid = true;
    }
    c.rate = mutual_info(hp, c.duty) / tau;
    report.candidates.push_back(c);
  }

  const DutyPair solo[2] = {
      {single_user_duty(params.a1(), params.lambda0(), tau), 0.0},
      {0.0, single_user_duty(params.a2(), params.lambda0(), tau)}};
  const Scenario solo_scenario[2] = {Scenario::OnlyUser1, Scenario::OnlyUser2};
  for (int k = 0; k < 2; ++k) {
    Candidate c;
    c.scenario = solo_scenario[k];
    c.valid = in_box(solo[k]);
    if (c.valid) c.duty = solo[k];
    c.rate = mutual_info(hp, c.duty) / tau;
    report.candidates.push_back(c);
  }

  double best_rate = -1.0;
  for (const Candidate& c : report.candidates) {
    if (c.valid) best_rate = std::max(best_rate, c.rate);
  }
  const Candidate* winner = nullptr;
  for (const Candidate& c : report.candidates) {
    if (!c.valid || c.rate < best_rate - SolveReport::kTieTolerance) continue;
    report.near_ties.push_back(c.scenario);
    if (winner == nullptr || priority(c.scenario) > priority(winner->scenario) ||
        (priority(c.scenario) == priority(winner->scenario) &&
         c.rate > winner->rate)) {
      winner = &c;
    }
  }

  report.capacity = winner->rate;
  report.optimum = winner->duty;
  report.winner = winner->scenario;
  report.strategy = strategy_of(winner->scenario);
  report.sufficiency = sufficiency_tests(params);

  if (!report.regime_ok) {
    const oracle::GridResult check =
        oracle::grid_capacity(params, oracle::GridSpec{1e-3, 2});
    report.oracle_check = check;
    if (check.value > report.capacity + SolveReport::kTieTolerance) {
      report.capacity = check.value;
      report.optimum = check.duty;
      report.strategy = classify_duty(check.duty);
    }
  }
  return report;
}

double TauRule::tau_for(double a1, double a2, double lambda0) const {
  if (kind == Kind::Fixed) return value;
  return value * std::numbers::ln2 / (a1 + a2 + lambda0);
}

StrategyGrid sweep_strategy_region(std::span<const double> a1_grid,
                                   std::span<const double> a2_grid,
                                   double lambda0, const TauRule& rule,
                                   unsigned threads) {
  StrategyGrid grid;
  grid.a1.assign(a1_grid.begin(), a1_grid.end());
  grid.a2.assign(a2_grid.begin(), a2_grid.end());
  grid.labels.resize(grid.a1.size() * grid.a2.size());
  const std::size_t cols = grid.a2.size();
  detail::parallel_for(grid.labels.size(), threads, [&](std::size_t idx) {
    const double a1 = grid.a1[idx / cols];
    const double a2 = grid.a2[idx % cols];
    const ChannelParams p(a1, a2, lambda0, rule.tau_for(a1, a2, lambda0));
    grid.labels[idx] = solve(p).strategy;
  });
  return grid;
}

}  // namespace poisson_mac
