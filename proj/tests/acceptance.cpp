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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "poisson_mac/asymptotics.hpp"
#include "poisson_mac/miso.hpp"
#include "poisson_mac/oracle.hpp"
#include "poisson_mac/siso.hpp"
#include "poisson_mac/symmetric.hpp"

using namespace poisson_mac;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Constants at tau = 0.02, lambda0 = 0.001.
Outcome constants() {
  Outcome o;
  const double lo = log_odds(hit_prob(0.001, 0.02));
  const double g = big_g(10, 0.001, 0.02);
  o.check(std::abs(lo - 10.8198) <= 1e-3, fmt("ln((1-p4)/p4) = %.6f", lo));
  o.check(std::abs(g - 9.51) <= 0.02, fmt("G(10) = %.6f", g));
  o.detail = fmt("ln((1-p4)/p4)=%.6f G(10)=%.6f", lo, g);
  return o;
}

// 2. The two reference channels.
Outcome figures() {
  Outcome o;
  const ChannelParams fig1(1, 20, 0.001, 0.02), fig2(10, 12, 0.001, 0.02);
  const int n1 = find_intersections(fig1).valid_count();
  const int n2 = find_intersections(fig2).valid_count();
  const Strategy s1 = solve(fig1).strategy, s2 = solve(fig2).strategy;
  o.check(n1 == 0 && s1 == Strategy::OnlyUser2, "(1,20) mismatch");
  o.check(n2 == 1 && s2 == Strategy::BothActive, "(10,12) mismatch");
  o.detail = fmt("(1,20): %d crossings, %s; (10,12): %d crossing, %s", n1,
                 std::string(to_string(s1)).c_str(), n2,
                 std::string(to_string(s2)).c_str());
  return o;
}

// 3. Symmetric optimum on the diagonal.
Outcome symmetry() {
  Outcome o;
  int run = 0, skipped = 0;
  double worst_diag = 0, worst_fp = 0;
  for (double a : {5.0, 10.0, 12.5, 20.0}) {
    for (double tau : {0.02, 0.01, 0.005}) {
      const ChannelParams p(a, a, 0.001, tau);
      if (!p.in_regime()) {
        ++skipped;
        continue;
      }
      ++run;
      const SolveReport r = solve(p);
      const double fp = symmetric_fixed_point(a, 0.001, tau);
      worst_diag = std::max(worst_diag, std::abs(r.optimum.mu1 - r.optimum.mu2));
      worst_fp = std::max(worst_fp, std::abs(r.optimum.mu1 - fp));
    }
  }
  o.check(worst_diag <= 1e-9 && worst_fp <= 1e-9, "tolerance exceeded");
  o.detail = fmt("%d instances (%d out of regime skipped), max|mu1-mu2|=%.2e "
                 "max|mu-fixed point|=%.2e",
                 run, skipped, worst_diag, worst_fp);
  return o;
}

// 4. Convergence to the continuous channel.
Outcome convergence() {
  Outcome o;
  const ContinuousParams cp{10, 12, 0.001};
  const std::vector<double> taus = {1e-4, 1e-5};
  const std::vector<ConvergenceRow> rows = convergence_report(cp, taus);
  const double alpha_gap =
      std::abs(single_user_duty(10, 0.001, 1e-5) - alpha_cont(10 / 0.001));
  o.check(rows[0].gap < 1e-2, "gap at 1e-4");
  o.check(rows[1].gap < 1e-3, "gap at 1e-5");
  o.check(alpha_gap <= 1e-3, "single-user duty gap");
  o.detail = fmt("gap(1e-4)=%.2e gap(1e-5)=%.2e |alpha_tau-alpha|=%.2e",
                 rows[0].gap, rows[1].gap, alpha_gap);
  return o;
}

// 5. Solver against the grid oracle.
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20260501);
  std::uniform_real_distribution<double> peak(0.5, 30.0), log_bg(-4.0, 0.0);
  const oracle::GridSpec spec{1e-2, 3};
  double worst_excess = -1e300, worst_bound = 0;
  for (int k = 0; k < 50; ++k) {
    const double a1 = peak(rng), a2 = peak(rng);
    const double l0 = std::pow(10.0, log_bg(rng));
    const ChannelParams p(a1, a2, l0, 0.8 * std::numbers::ln2 / (a1 + a2 + l0));
    const double cap = solve(p).capacity;
    const oracle::GridResult g = oracle::grid_capacity(p, spec);
    const double diff = std::abs(cap - g.value);
    worst_excess = std::max(worst_excess, diff - g.error_bound);
    worst_bound = std::max(worst_bound, g.error_bound);
    o.check(diff <= g.error_bound + 1e-9, fmt("instance %d", k));
    o.check(g.value <= cap + 1e-9, fmt("grid beats solver at %d", k));
  }
  const std::string first = o.ok ? "" : o.detail + "; ";
  o.detail = first + fmt("50 instances, final step %.0e, max(|diff|-eps)=%.2e, "
                         "max eps=%.2e",
                         spec.final_step(), worst_excess, worst_bound);
  return o;
}

MisoConfig make_config(const std::vector<double>& p1,
                       const std::vector<double>& p2) {
  return MisoConfig(
      Eigen::Map<const Eigen::VectorXd>(p1.data(), static_cast<Eigen::Index>(p1.size())),
      Eigen::Map<const Eigen::VectorXd>(p2.data(), static_cast<Eigen::Index>(p2.size())),
      0.001, 0.02);
}

std::vector<double> random_partition(double total, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> parts(1, 4);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(parts(rng));
  double sum = 0;
  for (double& x : w) sum += (x = u(rng));
  double used = 0;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) used += (w[j] = total * w[j] / sum);
  w.back() = total - used;
  return w;
}

// 6. Multi-antenna users reduce to single antennas.
Outcome miso_equivalence() {
  Outcome o;
  const double siso = solve(ChannelParams(10, 12, 0.001, 0.02)).capacity;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0, worst_enum = -1e300;
  int enumerated = 0;
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> p1 = random_partition(10, rng);
    const std::vector<double> p2 = random_partition(12, rng);
    const MisoConfig c = make_config(p1, p2);
    worst = std::max(worst, std::abs(solve_miso(c).capacity - siso));
  }
  // Two antennas per user: no joint PMF on a 1e-3 lattice beats nu.
  for (int k = 0; k < 10; ++k) {
    const double s1 = 10 * u(rng), s2 = 12 * u(rng);
    const MisoConfig c = make_config({s1, 10 - s1}, {s2, 12 - s2});
    const std::vector<double> d1 = {u(rng), u(rng)}, d2 = {u(rng), u(rng)};
    const oracle::EnumerationResult e =
        oracle::miso_pmf_enumeration(c, d1, d2, 1e-3);
    const double nu = miso_mutual_info(c, nu_pmf(d1).to_joint(),
                                       nu_pmf(d2).to_joint());
    worst_enum = std::max(worst_enum, e.best - nu - e.resolution_bound);
    ++enumerated;
  }
  o.check(worst <= 1e-12, "capacity mismatch");
  o.check(worst_enum <= 0.0, "enumeration beats nu");
  o.detail = fmt("20 partitions max|miso-siso|=%.2e; %d enumerations "
                 "max(best-nu-bound)=%.2e",
                 worst, enumerated, worst_enum);
  return o;
}

// 7. Closed-form derivatives against finite differences.
Outcome derivatives() {
  Outcome o;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> peak(0.5, 30.0), log_bg(-4.0, 0.0),
      frac(0.1, 1.0), duty(0.01, 0.99);
  double worst_g = 0, worst_h = 0;
  for (int k = 0; k < 100; ++k) {
    const double a1 = peak(rng), a2 = peak(rng);
    const double l0 = std::pow(10.0, log_bg(rng));
    const ChannelParams p(a1, a2, l0, frac(rng) * std::numbers::ln2 / (a1 + a2 + l0));
    const DutyPair d{duty(rng), duty(rng)};
    const Vector2<double> g = grad_mutual_info(p, d);
    const Matrix2<double> h = hessian_mutual_info(p, d);
    const double eg = (g - oracle::fd_gradient(p, d, 1e-6)).norm() /
                      std::max(g.norm(), 1e-3);
    const double eh = (h - oracle::fd_hessian(p, d, 1e-4)).norm() / h.norm();
    worst_g = std::max(worst_g, eg);
    worst_h = std::max(worst_h, eh);
  }
  o.check(worst_g <= 1e-6, "gradient");
  o.check(worst_h <= 1e-4, "hessian");
  o.detail = fmt("100 points, max rel err gradient=%.2e hessian=%.2e", worst_g,
                 worst_h);
  return o;
}

// 8. Schur-concavity below the threshold and the line-maximum dichotomy.
Outcome schur() {
  Outcome o;
  const double l0 = 0.001, tau = 0.02;
  const double a_th = *a_threshold(l0, tau);
  const double a_low = 0.5 * a_th;
  const ChannelParams low(a_low, a_low, l0, tau);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -1e300;
  for (int k = 0; k < 1000; ++k) {
    const DutyPair d{u(rng), u(rng)};
    const double m = 0.5 * (d.mu1 + d.mu2);
    worst = std::max(worst, mutual_info(low, d) - mutual_info(low, {m, m}));
  }
  o.check(worst <= 1e-12, "majorization");

  const double step = 1e-4;
  int lines = 0, edge = 0, diag = 0, gap = 0, bad = 0;
  for (double a : {a_th, 10.0, 12.5, 17.0}) {
    const ChannelParams p(a, a, l0, tau);
    const BoundaryQuantities b = *boundary_quantities(a, l0, tau);
    for (int s = 0; s <= 5000; ++s) {
      const double mu_s = s * step;
      const double t_max = std::min(mu_s, 1 - mu_s);
      // Grid maximum along the line.
      const int n = static_cast<int>(std::floor(t_max / step + 1e-9));
      double best_t = 0, best = -1;
      for (int k = 0; k <= n + 1; ++k) {
        const double t = std::min(k * step, t_max);
        const double v = mutual_info(p, DutyPair{mu_s + t, mu_s - t});
        if (v > best) {
          best = v;
          best_t = t;
        }
      }
      double expect_t;
      if (mu_s <= b.mu_s_star) {
        expect_t = t_max;  // corner (2 mu_s, 0)
        ++edge;
      } else if (mu_s >= b.mu_s_prime) {
        expect_t = 0;  // diagonal
        ++diag;
      } else {
        const DutyPair x = line_maximizer(a, l0, tau, mu_s);
        expect_t = 0.5 * (x.mu1 - x.mu2);
        ++gap;
      }
      const double at_expect =
          mutual_info(p, DutyPair{mu_s + expect_t, mu_s - expect_t});
      ++lines;
      if (std::abs(best_t - expect_t) > step + 1e-12 || at_expect < best - 1e-15) {
        ++bad;
      }
    }
  }
  o.check(bad == 0, fmt("%d line maxima off", bad));
  o.detail = fmt("A_th=%.6f, max I-I(mean)=%.2e; %d lines: %d corner, %d "
                 "diagonal, %d between boundaries, %d off",
                 a_th, worst, lines, edge, diag, gap, bad);
  return o;
}

// 9. Shape of the strategy map.
Outcome strategy_region() {
  Outcome o;
  const int n = 50;
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = 1.0 + 29.0 * k / (n - 1);
  const StrategyGrid g =
      sweep_strategy_region(grid, grid, 0.001, TauRule::regime_scaled(0.8), 1);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    o.check(g.at(i, i) == Strategy::BothActive, fmt("diagonal %d", i));
    for (int j = 0; j < n; ++j) {
      const Strategy s = g.at(i, j);
      ++counts[static_cast<int>(s)];
      if (s == Strategy::OnlyUser2) o.check(grid[j] > grid[i], "OnlyUser2 side");
      if (s == Strategy::OnlyUser1) o.check(grid[i] > grid[j], "OnlyUser1 side");
    }
    // Each label occupies one contiguous run of the row.
    for (Strategy s : {Strategy::OnlyUser1, Strategy::OnlyUser2, Strategy::BothActive}) {
      int runs = 0;
      for (int j = 0; j < n; ++j) {
        if (g.at(i, j) == s && (j == 0 || g.at(i, j - 1) != s)) ++runs;
      }
      o.check(runs <= 1, fmt("row %d split", i));
    }
  }
  const std::string first = o.ok ? "" : o.detail + "; ";
  o.detail = first + fmt("50x50 cells: %d OnlyUser1, %d OnlyUser2, %d BothActive",
                         counts[0], counts[1], counts[2]);
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1 constants", 1, constants},
      {"2 reference channels", 1, figures},
      {"3 symmetric optimum", 5, symmetry},
      {"4 continuous limit", 30, convergence},
      {"5 grid oracle agreement", 300, oracle_equivalence},
      {"6 multi-antenna reduction", 120, miso_equivalence},
      {"7 derivatives", 10, derivatives},
      {"8 Schur dichotomy", 60, schur},
      {"9 strategy region", 600, strategy_region},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %-26s %s (%.2fs / %.0fs)%s\n", pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str(), secs, c.budget_s,
                in_time ? "" : " over budget");
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
