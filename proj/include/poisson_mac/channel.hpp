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

// Per-slot model of the two-user Poisson MAC observed through a one-bit
// photon counter with dead time tau. Everything here is a pure function of
// its arguments and is templated on the scalar type so that the same code
// path can be instantiated in extended precision for cross-checks.

#ifndef POISSON_MAC_CHANNEL_HPP_
#define POISSON_MAC_CHANNEL_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace poisson_mac {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Peak photon rates of the two users, background rate and dead time.
/// The dead time doubles as the sampling interval of the receiver.
template <typename Scalar>
class BasicChannelParams {
 public:
  BasicChannelParams(Scalar a1, Scalar a2, Scalar lambda0, Scalar tau)
      : a1_(a1), a2_(a2), lambda0_(lambda0), tau_(tau) {
    require_positive(a1_, "a1");
    require_positive(a2_, "a2");
    require_positive(lambda0_, "lambda0");
    require_positive(tau_, "tau");
  }

  Scalar a1() const { return a1_; }
  Scalar a2() const { return a2_; }
  Scalar lambda0() const { return lambda0_; }
  Scalar tau() const { return tau_; }

  /// Largest dead time for which the convexity and equivalence results
  /// hold: ln2 / (a1 + a2 + lambda0).
  Scalar regime_bound() const {
    return Scalar(std::numbers::ln2) / (a1_ + a2_ + lambda0_);
  }
  bool in_regime() const { return tau_ <= regime_bound(); }

  /// Same channel with the user labels exchanged.
  BasicChannelParams swapped() const {
    return BasicChannelParams(a2_, a1_, lambda0_, tau_);
  }

  bool operator==(const BasicChannelParams&) const = default;

 private:
  static void require_positive(Scalar v, const char* field) {
    using std::isfinite;
    if (!(v > Scalar(0)) || !isfinite(v)) {
      throw std::invalid_argument(std::string(field) +
                                  " must be finite and strictly positive");
    }
  }

  Scalar a1_;
  Scalar a2_;
  Scalar lambda0_;
  Scalar tau_;
};

/// Hit probabilities for the four on/off combinations:
/// p1 both on, p2 only user 2, p3 only user 1, p4 both off.
template <typename Scalar>
struct BasicHitProbs {
  Scalar p1;
  Scalar p2;
  Scalar p3;
  Scalar p4;

  /// p1 - p2 - p3 + p4; strictly negative by concavity of the hit probability.
  Scalar curvature() const { return p1 - p2 - p3 + p4; }
};

/// Per-slot on-probabilities of the two users.
template <typename Scalar>
struct BasicDutyPair {
  Scalar mu1 = Scalar(0);
  Scalar mu2 = Scalar(0);

  bool operator==(const BasicDutyPair&) const = default;
};

using ChannelParams = BasicChannelParams<double>;
using HitProbs = BasicHitProbs<double>;
using DutyPair = BasicDutyPair<double>;

template <typename Scalar>
bool in_box(const BasicDutyPair<Scalar>& d) {
  return d.mu1 >= Scalar(0) && d.mu1 <= Scalar(1) && d.mu2 >= Scalar(0) &&
         d.mu2 <= Scalar(1);
}

/// Probability that at least one photon arrives in a window of length tau
/// at total rate x: 1 - exp(-x tau), evaluated without cancellation.
template <typename Scalar>
Scalar hit_prob(Scalar x, Scalar tau) {
  using std::expm1;
  if (x < Scalar(0)) throw std::domain_error("hit_prob: negative rate");
  return -expm1(-x * tau);
}

/// Binary entropy in nats, continuously extended to h(0) = h(1) = 0.
template <typename Scalar>
Scalar binary_entropy(Scalar p) {
  using std::log;
  using std::log1p;
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  }
  if (p == Scalar(0) || p == Scalar(1)) return Scalar(0);
  return -p * log(p) - (Scalar(1) - p) * log1p(-p);
}

/// ln((1-p)/p), the derivative of the binary entropy. Open interval only.
template <typename Scalar>
Scalar log_odds(Scalar p) {
  using std::log;
  using std::log1p;
  return log1p(-p) - log(p);
}

/// Secant slope of the binary entropy between two distinct probabilities.
template <typename Scalar>
Scalar entropy_slope(Scalar hi, Scalar lo) {
  return (binary_entropy(hi) - binary_entropy(lo)) / (hi - lo);
}

/// 1 / (1 + exp(s)): the probability whose log-odds equal s.
template <typename Scalar>
Scalar logistic_of_log_odds(Scalar s) {
  using std::exp;
  return Scalar(1) / (Scalar(1) + exp(s));
}

template <typename Scalar>
BasicHitProbs<Scalar> hit_probs(const BasicChannelParams<Scalar>& params) {
  const Scalar tau = params.tau();
  const Scalar l0 = params.lambda0();
  return {hit_prob(params.a1() + params.a2() + l0, tau),
          hit_prob(params.a2() + l0, tau), hit_prob(params.a1() + l0, tau),
          hit_prob(l0, tau)};
}

/// Output hit probability under independent on/off inputs.
template <typename Scalar>
Scalar p_hat(const BasicHitProbs<Scalar>& hp, const BasicDutyPair<Scalar>& d) {
  const Scalar m1 = d.mu1, m2 = d.mu2;
  return m1 * m2 * hp.p1 + (Scalar(1) - m1) * m2 * hp.p2 +
         m1 * (Scalar(1) - m2) * hp.p3 +
         (Scalar(1) - m1) * (Scalar(1) - m2) * hp.p4;
}

template <typename Scalar>
Scalar p_hat(const BasicChannelParams<Scalar>& params,
             const BasicDutyPair<Scalar>& d) {
  return p_hat(hit_probs(params), d);
}

/// Per-slot mutual information (nats) between the two binary inputs and the
/// counter output: h(p_hat) minus the duty-weighted conditional entropies.
template <typename Scalar>
Scalar mutual_info(const BasicHitProbs<Scalar>& hp,
                   const BasicDutyPair<Scalar>& d) {
  const Scalar m1 = d.mu1, m2 = d.mu2;
  const Scalar conditional =
      m1 * m2 * binary_entropy(hp.p1) +
      (Scalar(1) - m1) * m2 * binary_entropy(hp.p2) +
      m1 * (Scalar(1) - m2) * binary_entropy(hp.p3) +
      (Scalar(1) - m1) * (Scalar(1) - m2) * binary_entropy(hp.p4);
  return binary_entropy(p_hat(hp, d)) - conditional;
}

template <typename Scalar>
Scalar mutual_info(const BasicChannelParams<Scalar>& params,
                   const BasicDutyPair<Scalar>& d) {
  return mutual_info(hit_probs(params), d);
}

/// Rate in nats per unit time, I / tau.
template <typename Scalar>
Scalar rate(const BasicChannelParams<Scalar>& params,
            const BasicDutyPair<Scalar>& d) {
  return mutual_info(params, d) / params.tau();
}

namespace detail {

// dp_hat/dmu1 and dp_hat/dmu2.
template <typename Scalar>
Vector2<Scalar> p_hat_slopes(const BasicHitProbs<Scalar>& hp,
                             const BasicDutyPair<Scalar>& d) {
  return {d.mu2 * (hp.p1 - hp.p2) + (Scalar(1) - d.mu2) * (hp.p3 - hp.p4),
          d.mu1 * (hp.p1 - hp.p3) + (Scalar(1) - d.mu1) * (hp.p2 - hp.p4)};
}

}  // namespace detail

/// Closed-form gradient (dI/dmu1, dI/dmu2).
template <typename Scalar>
Vector2<Scalar> grad_mutual_info(const BasicHitProbs<Scalar>& hp,
                                 const BasicDutyPair<Scalar>& d) {
  const Scalar h1 = binary_entropy(hp.p1), h2 = binary_entropy(hp.p2);
  const Scalar h3 = binary_entropy(hp.p3), h4 = binary_entropy(hp.p4);
  const Scalar lo = log_odds(p_hat(hp, d));
  const Vector2<Scalar> c = detail::p_hat_slopes(hp, d);
  return {c(0) * lo - (d.mu2 * (h1 - h2) + (Scalar(1) - d.mu2) * (h3 - h4)),
          c(1) * lo - (d.mu1 * (h1 - h3) + (Scalar(1) - d.mu1) * (h2 - h4))};
}

template <typename Scalar>
Vector2<Scalar> grad_mutual_info(const BasicChannelParams<Scalar>& params,
                                 const BasicDutyPair<Scalar>& d) {
  return grad_mutual_info(hit_probs(params), d);
}

/// Closed-form Hessian. The off-diagonal splits as -Ia + Ib with
/// Ia = c1 c2 / (p(1-p)) and Ib = ln((1-p)/p) (p1-p2-p3+p4) - second
/// difference of the conditional entropies, so det = Ib (2 Ia - Ib).
template <typename Scalar>
Matrix2<Scalar> hessian_mutual_info(const BasicHitProbs<Scalar>& hp,
                                    const BasicDutyPair<Scalar>& d) {
  const Scalar ph = p_hat(hp, d);
  const Scalar var = ph * (Scalar(1) - ph);
  const Vector2<Scalar> c = detail::p_hat_slopes(hp, d);
  const Scalar second_diff = binary_entropy(hp.p1) - binary_entropy(hp.p2) -
                             binary_entropy(hp.p3) + binary_entropy(hp.p4);
  const Scalar ib = log_odds(ph) * hp.curvature() - second_diff;
  Matrix2<Scalar> h;
  h(0, 0) = -c(0) * c(0) / var;
  h(1, 1) = -c(1) * c(1) / var;
  h(0, 1) = h(1, 0) = -c(0) * c(1) / var + ib;
  return h;
}

template <typename Scalar>
Matrix2<Scalar> hessian_mutual_info(const BasicChannelParams<Scalar>& params,
                                    const BasicDutyPair<Scalar>& d) {
  return hessian_mutual_info(hit_probs(params), d);
}

/// x ln x with phi(0) = 0.
template <typename Scalar>
Scalar phi(Scalar x) {
  using std::log;
  if (x < Scalar(0)) throw std::domain_error("phi: negative argument");
  if (x == Scalar(0)) return Scalar(0);
  return x * log(x);
}

/// Optimal single-user duty cycle of the continuous-time Poisson channel as
/// a function of peak-to-background ratio x:
/// (e^{-1} (1+x)^{1+1/x} - 1) / x.
template <typename Scalar>
Scalar alpha_cont(Scalar x) {
  using std::exp;
  using std::log1p;
  if (!(x > Scalar(0))) throw std::domain_error("alpha_cont: x must be > 0");
  const Scalar grown = exp((Scalar(1) + Scalar(1) / x) * log1p(x) - Scalar(1));
  return (grown - Scalar(1)) / x;
}

}  // namespace poisson_mac

#endif  // POISSON_MAC_CHANNEL_HPP_
