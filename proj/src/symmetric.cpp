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

#include "poisson_mac/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "poisson_mac/siso.hpp"

namespace poisson_mac {

namespace {

ChannelParams symmetric_params(double a, double lambda0, double tau) {
  return ChannelParams(a, a, lambda0, tau);
}

// 2 p2 - p1 - p4 = e^{-lambda0 tau} p(a)^2, free of cancellation.
double spread_gain(double a, double lambda0, double tau) {
  const double pa = hit_prob(a, tau);
  return std::exp(-lambda0 * tau) * pa * pa;
}

double threshold_residual(double a, double lambda0, double tau) {
  return big_g(a, lambda0, tau) - log_odds(hit_prob(lambda0, tau));
}

double boundary_level(double a, double lambda0, double tau) {
  return logistic_of_log_odds(big_g(a, lambda0, tau));
}

}  // namespace

std::string_view to_string(SchurSide s) {
  switch (s) {
    case SchurSide::ConcaveSide:
      return "ConcaveSide";
    case SchurSide::ConvexSide:
      return "ConvexSide";
    case SchurSide::Global:
      return "Global";
  }
  return "?";
}

std::string_view to_string(SchurMode m) {
  switch (m) {
    case SchurMode::GloballySchurConcave:
      return "GloballySchurConcave";
    case SchurMode::SplitRegions:
      return "SplitRegions";
  }
  return "?";
}

double big_g(double a, double lambda0, double tau) {
  const HitProbs hp = hit_probs(symmetric_params(a, lambda0, tau));
  const double num = 2.0 * binary_entropy(hp.p2) - binary_entropy(hp.p1) -
                     binary_entropy(hp.p4);
  return num / spread_gain(a, lambda0, tau);
}

std::optional<double> a_threshold(double lambda0, double tau) {
  symmetric_params(1.0, lambda0, tau);  // validates lambda0 and tau
  const double cap = 0.5 * (std::numbers::ln2 / tau - lambda0);
  if (!(cap > lambda0)) return std::nullopt;

  double lo = lambda0;
  if (threshold_residual(lo, lambda0, tau) <= 0.0) return std::nullopt;
  double hi = lo;
  for (;;) {
    hi = std::min(2.0 * hi, cap);
    if (threshold_residual(hi, lambda0, tau) < 0.0) break;
    if (hi >= cap) return std::nullopt;
    lo = hi;
  }
  // G decreases with a, so the residual falls through zero once.
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double r = threshold_residual(mid, lambda0, tau);
    if (std::abs(r) <= 1e-10 && hi - lo <= 1e-12 * hi) break;
    if (mid <= lo || mid >= hi) break;
    (r > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

std::optional<BoundaryQuantities> boundary_quantities(double a, double lambda0,
                                                      double tau) {
  const std::optional<double> a_th = a_threshold(lambda0, tau);
  if (!a_th || a < *a_th) return std::nullopt;

  const HitProbs hp = hit_probs(symmetric_params(a, lambda0, tau));
  BoundaryQuantities b;
  b.level = boundary_level(a, lambda0, tau);
  const double rise = std::max(0.0, b.level - hp.p4);
  const double slope = hp.p2 - hp.p4;
  const double kappa = spread_gain(a, lambda0, tau);
  b.mu_s_star = rise / (2.0 * slope);
  // Smaller root of kappa mu^2 - 2 slope mu + rise = 0.
  const double disc = std::max(0.0, slope * slope - kappa * rise);
  b.mu_s_prime = rise / (slope + std::sqrt(disc));
  return b;
}

SchurSide schur_classify(double a, double lambda0, double tau,
                         const DutyPair& duty) {
  const ChannelParams params = symmetric_params(a, lambda0, tau);
  const std::optional<double> a_th = a_threshold(lambda0, tau);
  if (!a_th || a < *a_th) return SchurSide::Global;
  return p_hat(params, duty) >= boundary_level(a, lambda0, tau)
             ? SchurSide::ConcaveSide
             : SchurSide::ConvexSide;
}

double symmetric_fixed_point(double a, double lambda0, double tau) {
  const ChannelParams params = symmetric_params(a, lambda0, tau);
  auto residual = [&](double mu) { return mu - g_mac(params, mu); };
  double lo = 0.0, hi = 1.0;
  if (residual(lo) >= 0.0 || residual(hi) <= 0.0) {
    throw std::domain_error("symmetric_fixed_point: no sign change on [0,1]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
}

double boundary_slope(double a, double lambda0, double tau,
                      const DutyPair& duty) {
  const HitProbs hp = hit_probs(symmetric_params(a, lambda0, tau));
  const Vector2<double> s = detail::p_hat_slopes(hp, duty);
  return -s(1) / s(0);
}

DutyPair line_maximizer(double a, double lambda0, double tau, double mu_s) {
  if (!(mu_s >= 0.0 && mu_s <= 1.0)) {
    throw std::invalid_argument("mu_s must lie in [0, 1]");
  }
  const ChannelParams params = symmetric_params(a, lambda0, tau);
  // On the line, p_hat(mu_s + t, mu_s - t) = p_hat(mu_s, mu_s) + kappa t^2.
  const double base = p_hat(params, DutyPair{mu_s, mu_s});
  const double kappa = spread_gain(a, lambda0, tau);
  const double t_max = std::min(mu_s, 1.0 - mu_s);
  const double level = boundary_level(a, lambda0, tau);

  double t = 0.0;
  if (base >= level) {
    t = 0.0;
  } else if (base + kappa * t_max * t_max <= level) {
    t = t_max;
  } else {
    t = std::min(t_max, std::sqrt((level - base) / kappa));
  }
  return {mu_s + t, mu_s - t};
}

SymmetricReport analyze_symmetric(double a, double lambda0, double tau) {
  const ChannelParams params = symmetric_params(a, lambda0, tau);
  SymmetricReport r;
  r.regime_ok = params.in_regime();
  r.g_of_a = big_g(a, lambda0, tau);
  r.a_th = a_threshold(lambda0, tau);
  r.boundary = boundary_quantities(a, lambda0, tau);
  r.schur_mode = r.boundary ? SchurMode::SplitRegions
                            : SchurMode::GloballySchurConcave;
  r.fixed_point = symmetric_fixed_point(a, lambda0, tau);
  r.capacity = solve(params).capacity;
  return r;
}

}  // namespace poisson_mac
