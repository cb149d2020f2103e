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

#include "poisson_mac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "poisson_mac/miso.hpp"

namespace poisson_mac::oracle {

namespace {

// Coarse-grid local maxima refined independently.
constexpr std::size_t kMaxStarts = 4;

struct Sample {
  double value;
  DutyPair duty;
};

std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> xs;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  xs.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) xs.push_back(lo + static_cast<double>(k) * step);
  if (hi - xs.back() > 1e-12 * step) xs.push_back(hi);
  return xs;
}

Sample refine(const Objective2& objective, Sample incumbent, double step,
              int rounds) {
  for (int r = 0; r < rounds; ++r) {
    const double fine = step / 10.0;
    const DutyPair c = incumbent.duty;
    for (int i = -10; i <= 10; ++i) {
      const double m1 = std::clamp(c.mu1 + i * fine, 0.0, 1.0);
      for (int j = -10; j <= 10; ++j) {
        const double m2 = std::clamp(c.mu2 + j * fine, 0.0, 1.0);
        const double v = objective({m1, m2});
        if (v > incumbent.value) incumbent = {v, {m1, m2}};
      }
    }
    step = fine;
  }
  return incumbent;
}

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0.0 && step <= 0.1)) {
    throw std::invalid_argument("grid step must lie in (0, 0.1]");
  }
  if (refine_rounds < 0 || refine_rounds > 6) {
    throw std::invalid_argument("refine_rounds must lie in [0, 6]");
  }
}

double GridSpec::final_step() const {
  return step * std::pow(10.0, -refine_rounds);
}

GridResult grid_maximize(const Objective2& objective, const GridSpec& spec) {
  spec.validate();
  const std::vector<double> xs = axis(0.0, 1.0, spec.step);
  const std::size_t n = xs.size();

  Eigen::MatrixXd values(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      values(i, j) = objective({xs[i], xs[j]});
    }
  }

  // Gradient bound from neighbouring differences.
  double slope = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i1 = std::min(i + 1, n - 1);
      const std::size_t j1 = std::min(j + 1, n - 1);
      const double g1 =
          i1 == i ? 0.0 : (values(i1, j) - values(i, j)) / (xs[i1] - xs[i]);
      const double g2 =
          j1 == j ? 0.0 : (values(i, j1) - values(i, j)) / (xs[j1] - xs[j]);
      slope = std::max(slope, std::hypot(g1, g2));
    }
  }

  std::vector<Sample> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const long ii = static_cast<long>(i) + di;
          const long jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(n) ||
              jj >= static_cast<long>(n)) {
            continue;
          }
          if (values(ii, jj) > values(i, j)) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peaks.push_back({values(i, j), {xs[i], xs[j]}});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Sample& a, const Sample& b) { return a.value > b.value; });
  if (peaks.size() > kMaxStarts) peaks.resize(kMaxStarts);

  Sample best = peaks.front();
  for (const Sample& start : peaks) {
    const Sample s = refine(objective, start, spec.step, spec.refine_rounds);
    if (s.value > best.value) best = s;
  }

  GridResult out;
  out.value = best.value;
  out.duty = best.duty;
  out.lipschitz = 1.5 * slope;
  out.error_bound = out.lipschitz * spec.final_step();
  return out;
}

GridResult grid_capacity(const ChannelParams& params, const GridSpec& spec) {
  const HitProbs hp = hit_probs(params);
  const double tau = params.tau();
  return grid_maximize(
      [&](const DutyPair& d) { return mutual_info(hp, d) / tau; }, spec);
}

namespace {

void require_interior(const DutyPair& d, double h) {
  if (!(h > 0.0) || d.mu1 - h < 0.0 || d.mu1 + h > 1.0 || d.mu2 - h < 0.0 ||
      d.mu2 + h > 1.0) {
    throw std::domain_error("finite-difference stencil leaves the unit box");
  }
}

}  // namespace

Vector2<double> fd_gradient(const ChannelParams& params, const DutyPair& d,
                            double h) {
  require_interior(d, h);
  const HitProbs hp = hit_probs(params);
  auto f = [&](double m1, double m2) { return mutual_info(hp, {m1, m2}); };
  return {(f(d.mu1 + h, d.mu2) - f(d.mu1 - h, d.mu2)) / (2 * h),
          (f(d.mu1, d.mu2 + h) - f(d.mu1, d.mu2 - h)) / (2 * h)};
}

Matrix2<double> fd_hessian(const ChannelParams& params, const DutyPair& d,
                           double h) {
  require_interior(d, h);
  const HitProbs hp = hit_probs(params);
  auto f = [&](double m1, double m2) { return mutual_info(hp, {m1, m2}); };
  const double x = d.mu1, y = d.mu2;
  const double c = f(x, y);
  Matrix2<double> out;
  out(0, 0) = (f(x + h, y) - 2 * c + f(x - h, y)) / (h * h);
  out(1, 1) = (f(x, y + h) - 2 * c + f(x, y - h)) / (h * h);
  out(0, 1) = out(1, 0) = (f(x + h, y + h) - f(x + h, y - h) -
                           f(x - h, y + h) + f(x - h, y - h)) /
                          (4 * h * h);
  return out;
}

namespace {

// All PMFs over one user's subsets consistent with the given marginals,
// sampled at `step` in the free parameter.
std::vector<JointPmf> feasible_pmfs(std::span<const double> duties,
                                    double step) {
  std::vector<JointPmf> out;
  if (duties.size() == 1) {
    JointPmf q;
    q.masses = Eigen::Vector2d(1.0 - duties[0], duties[0]);
    out.push_back(q);
    return out;
  }
  const double a = duties[0], b = duties[1];
  const double lo = std::max(0.0, a + b - 1.0);
  const double hi = std::min(a, b);
  // Mask order: {}, {1}, {2}, {1,2}; s is the both-on mass.
  for (double s : axis(lo, hi, step)) {
    s = std::min(s, hi);
    JointPmf q;
    q.masses = Eigen::Vector4d(std::max(0.0, 1.0 - a - b + s),
                               std::max(0.0, a - s), std::max(0.0, b - s), s);
    out.push_back(q);
  }
  return out;
}

}  // namespace

EnumerationResult miso_pmf_enumeration(const MisoConfig& config,
                                       std::span<const double> duties_user1,
                                       std::span<const double> duties_user2,
                                       double step) {
  if (config.antennas(1) > 2 || config.antennas(2) > 2) {
    throw std::invalid_argument("enumeration supports at most two antennas");
  }
  if (static_cast<int>(duties_user1.size()) != config.antennas(1) ||
      static_cast<int>(duties_user2.size()) != config.antennas(2)) {
    throw std::invalid_argument("duty vector length must match antennas");
  }
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");

  const MisoObjective objective(config);
  const std::vector<JointPmf> q1s = feasible_pmfs(duties_user1, step);
  const std::vector<JointPmf> q2s = feasible_pmfs(duties_user2, step);

  EnumerationResult out;
  out.best = -1.0;
  Eigen::MatrixXd values(q1s.size(), q2s.size());
  for (std::size_t i = 0; i < q1s.size(); ++i) {
    for (std::size_t j = 0; j < q2s.size(); ++j) {
      values(i, j) = objective(q1s[i], q2s[j]);
      out.best = std::max(out.best, values(i, j));
    }
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (i + 1 < values.rows()) {
        out.resolution_bound = std::max(
            out.resolution_bound, std::abs(values(i + 1, j) - values(i, j)));
      }
      if (j + 1 < values.cols()) {
        out.resolution_bound = std::max(
            out.resolution_bound, std::abs(values(i, j + 1) - values(i, j)));
      }
    }
  }
  return out;
}

}  // namespace poisson_mac::oracle
