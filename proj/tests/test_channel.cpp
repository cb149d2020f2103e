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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/LU>

#include "poisson_mac/channel.hpp"
#include "poisson_mac/oracle.hpp"

using namespace poisson_mac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ChannelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> peak(0.5, 30.0);
  std::uniform_real_distribution<double> log_bg(-4.0, 0.0);
  std::uniform_real_distribution<double> frac(0.1, 1.0);
  const double a1 = peak(rng), a2 = peak(rng);
  const double l0 = std::pow(10.0, log_bg(rng));
  return ChannelParams(a1, a2, l0,
                       frac(rng) * std::numbers::ln2 / (a1 + a2 + l0));
}

DutyPair random_interior(std::mt19937_64& rng, double margin) {
  std::uniform_real_distribution<double> u(margin, 1.0 - margin);
  return {u(rng), u(rng)};
}

// Mutual information written out term by term in long double.
long double direct_mutual_info(long double a1, long double a2, long double l0,
                               long double tau, long double m1,
                               long double m2) {
  auto p = [&](long double x) { return 1.0L - std::exp(-x * tau); };
  auto h = [](long double q) {
    return -q * std::log(q) - (1.0L - q) * std::log(1.0L - q);
  };
  const long double p1 = p(a1 + a2 + l0), p2 = p(a2 + l0), p3 = p(a1 + l0),
                    p4 = p(l0);
  const long double mix = m1 * m2 * p1 + (1 - m1) * m2 * p2 +
                          m1 * (1 - m2) * p3 + (1 - m1) * (1 - m2) * p4;
  return h(mix) - m1 * m2 * h(p1) - (1 - m1) * m2 * h(p2) -
         m1 * (1 - m2) * h(p3) - (1 - m1) * (1 - m2) * h(p4);
}

}  // namespace

TEST_CASE("channel parameters are validated by field") {
  REQUIRE_THROWS_WITH(ChannelParams(0.0, 1.0, 0.001, 0.02),
                      Catch::Matchers::ContainsSubstring("a1"));
  REQUIRE_THROWS_WITH(ChannelParams(1.0, -1.0, 0.001, 0.02),
                      Catch::Matchers::ContainsSubstring("a2"));
  REQUIRE_THROWS_WITH(ChannelParams(1.0, 1.0, 0.0, 0.02),
                      Catch::Matchers::ContainsSubstring("lambda0"));
  REQUIRE_THROWS_WITH(ChannelParams(1.0, 1.0, 0.001, NAN),
                      Catch::Matchers::ContainsSubstring("tau"));
  const ChannelParams p(1.0, 20.0, 0.001, 0.02);
  REQUIRE(p.in_regime());
  REQUIRE(p.swapped().a1() == 20.0);
  REQUIRE_FALSE(ChannelParams(20.0, 20.0, 0.001, 0.02).in_regime());
}

TEST_CASE("hit_prob") {
  REQUIRE(hit_prob(0.0, 0.02) == 0.0);
  REQUIRE_THAT(hit_prob(std::numbers::ln2 / 0.02, 0.02), WithinAbs(0.5, 1e-15));
  const double p4 = hit_prob(0.001, 0.02);
  REQUIRE_THAT(p4, WithinRel(2.0e-5, 1e-4));
  REQUIRE_THAT(log_odds(p4), WithinAbs(10.8198, 1e-3));
  // Full relative precision where 1 - exp(-x) would lose digits.
  REQUIRE_THAT(hit_prob(1e-10, 1e-6), WithinRel(1e-16, 1e-12));
  REQUIRE_THROWS_AS(hit_prob(-1.0, 0.02), std::domain_error);
}

TEST_CASE("binary_entropy") {
  REQUIRE_THAT(binary_entropy(0.5), WithinAbs(std::numbers::ln2, 1e-15));
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  REQUIRE_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  REQUIRE_THROWS_AS(binary_entropy(1.1), std::domain_error);

  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big q("0.1");
  const Big exact = -q * log(q) - (1 - q) * log(1 - q);
  REQUIRE_THAT(binary_entropy(0.1), WithinRel(exact.convert_to<double>(), 1e-15));
}

TEST_CASE("hit_probs") {
  const HitProbs hp = hit_probs(ChannelParams(10, 10, 0.001, 0.02));
  REQUIRE_THAT(hp.p1, WithinRel(-std::expm1(-0.40002), 1e-15));
  REQUIRE(hp.p2 == hp.p3);

  const HitProbs tiny = hit_probs(ChannelParams(10, 10, 1e-12, 0.02));
  REQUIRE(tiny.p4 < 1e-13);

  const HitProbs skew = hit_probs(ChannelParams(1, 20, 0.001, 0.02));
  REQUIRE(skew.p2 > skew.p3);
  REQUIRE(skew.p4 < skew.p3);
  REQUIRE(skew.p2 < skew.p1);
  REQUIRE(skew.p1 <= 0.5);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    REQUIRE(hit_probs(random_params(rng)).curvature() < 0.0);
  }
}

TEST_CASE("p_hat") {
  const ChannelParams p(10, 12, 0.001, 0.02);
  const HitProbs hp = hit_probs(p);
  REQUIRE(p_hat(p, DutyPair{0, 0}) == hp.p4);
  REQUIRE(p_hat(p, DutyPair{1, 1}) == hp.p1);
  REQUIRE_THAT(p_hat(p, DutyPair{0.5, 0.5}),
               WithinRel((hp.p1 + hp.p2 + hp.p3 + hp.p4) / 4, 1e-15));
}

TEST_CASE("mutual_info") {
  const ChannelParams p(10, 12, 0.001, 0.02);
  REQUIRE_THAT(mutual_info(p, DutyPair{0, 0}), WithinAbs(0.0, 1e-17));
  REQUIRE_THAT(mutual_info(p, DutyPair{1, 1}), WithinAbs(0.0, 1e-17));
  const long double direct =
      direct_mutual_info(10, 12, 0.001L, 0.02L, 0.3L, 0.4L);
  REQUIRE_THAT(mutual_info(p, DutyPair{0.3, 0.4}),
               WithinRel(static_cast<double>(direct), 1e-12));
  REQUIRE_THAT(rate(p, DutyPair{0.3, 0.4}),
               WithinRel(mutual_info(p, DutyPair{0.3, 0.4}) / 0.02, 1e-15));
}

TEST_CASE("mutual_info bounds and relabeling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const ChannelParams p = random_params(rng);
    const DutyPair d{u(rng), u(rng)};
    const double i = mutual_info(p, d);
    const double cap = binary_entropy(p_hat(p, d));
    REQUIRE(i >= -1e-15);
    REQUIRE(i <= cap + 1e-15);
    REQUIRE(cap <= std::numbers::ln2 + 1e-15);
    REQUIRE_THAT(mutual_info(p.swapped(), DutyPair{d.mu2, d.mu1}),
                 WithinAbs(i, 1e-15));
  }
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const ChannelParams p = random_params(rng);
    const DutyPair d = random_interior(rng, 0.01);
    const Vector2<double> g = grad_mutual_info(p, d);
    const Vector2<double> fd = oracle::fd_gradient(p, d, 1e-6);
    REQUIRE((g - fd).norm() <= 1e-6 * std::max(g.norm(), 1e-3));
  }
}

TEST_CASE("gradient is symmetric on the diagonal of a symmetric channel") {
  const ChannelParams p(10, 10, 0.001, 0.02);
  for (double mu : {0.1, 0.27, 0.6}) {
    const Vector2<double> g = grad_mutual_info(p, DutyPair{mu, mu});
    REQUIRE_THAT(g(0), WithinAbs(g(1), 1e-15));
  }
}

TEST_CASE("hessian") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const ChannelParams p = random_params(rng);
    const DutyPair d = random_interior(rng, 0.01);
    const Matrix2<double> h = hessian_mutual_info(p, d);
    REQUIRE(h(0, 0) < 0.0);
    REQUIRE(h(1, 1) < 0.0);
    REQUIRE(h(0, 1) == h(1, 0));
    const Matrix2<double> fd = oracle::fd_hessian(p, d, 1e-4);
    REQUIRE((h - fd).norm() <= 1e-4 * h.norm());
  }
}

TEST_CASE("hessian at the origin of the A=10 symmetric channel is indefinite") {
  const ChannelParams p(10, 10, 0.001, 0.02);
  const HitProbs hp = hit_probs(p);
  const DutyPair origin{0, 0};
  const Matrix2<double> h = hessian_mutual_info(p, origin);

  // det = Ib (2 Ia - Ib) from the split of the off-diagonal term.
  const double ph = p_hat(hp, origin);
  const double var = ph * (1 - ph);
  const double c1 = hp.p3 - hp.p4, c2 = hp.p2 - hp.p4;
  const double ia = c1 * c2 / var;
  const double ib = log_odds(ph) * hp.curvature() -
                    (binary_entropy(hp.p1) - binary_entropy(hp.p2) -
                     binary_entropy(hp.p3) + binary_entropy(hp.p4));
  REQUIRE_THAT(h.determinant(), WithinRel(ib * (2 * ia - ib), 1e-8));
  REQUIRE(h(0, 0) < 0.0);
  REQUIRE(h.determinant() < 0.0);
}

TEST_CASE("phi and alpha_cont") {
  REQUIRE(phi(1.0) == 0.0);
  REQUIRE(phi(0.0) == 0.0);
  REQUIRE_THAT(phi(std::numbers::e), WithinRel(std::numbers::e, 1e-15));
  REQUIRE_THROWS_AS(phi(-1.0), std::domain_error);
  REQUIRE_THAT(alpha_cont(1.0), WithinRel(4.0 / std::numbers::e - 1.0, 1e-14));
  REQUIRE_THAT(alpha_cont(1e8), WithinAbs(1.0 / std::numbers::e, 1e-6));
  REQUIRE_THROWS_AS(alpha_cont(0.0), std::domain_error);
  for (double x : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
    REQUIRE(alpha_cont(x) >= 0.0);
    REQUIRE(alpha_cont(x) <= 1.0);
  }
}

TEST_CASE("entropy of the hit probability is concave in regime") {
  for (double b : {1.0, 10.0, 40.0}) {
    const double tau = std::numbers::ln2 / b;
    auto f = [&](double x) { return binary_entropy(hit_prob(x, tau)); };
    const int n = 400;
    for (int i = 0; i + 2 <= n; ++i) {
      for (int j = i + 2; j <= n; j += 7) {
        const double x = b * i / n, y = b * j / n;
        REQUIRE(f(0.5 * (x + y)) >= 0.5 * (f(x) + f(y)) - 1e-15);
      }
    }
  }
}

TEST_CASE("chord slopes of binary entropy sit between end slopes") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int k = 0; k < 1000; ++k) {
    double x = u(rng), y = u(rng);
    if (std::abs(x - y) < 1e-3) continue;
    if (x > y) std::swap(x, y);
    const double chord = (binary_entropy(x) - binary_entropy(y)) / (x - y);
    REQUIRE(log_odds(y) < chord);
    REQUIRE(chord < log_odds(x));
  }
}

TEST_CASE("templated core runs in long double") {
  const BasicChannelParams<long double> p(10, 12, 0.001L, 0.02L);
  const BasicDutyPair<long double> d{0.3L, 0.4L};
  const long double direct =
      direct_mutual_info(10, 12, 0.001L, 0.02L, 0.3L, 0.4L);
  REQUIRE(std::abs(mutual_info(p, d) - direct) <= 1e-15L);
  REQUIRE(std::abs(mutual_info(p, d) -
                   static_cast<long double>(mutual_info(
                       ChannelParams(10, 12, 0.001, 0.02), DutyPair{0.3, 0.4}))) <
          1e-13L);
}
