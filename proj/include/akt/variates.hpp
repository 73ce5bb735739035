#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "akt/rng.hpp"

// Discrete random variates on top of akt::Rng.
//
// Algorithms are pinned (not delegated to <random>) so that seeded results
// are identical across standard-library implementations:
//   Poisson        - sequential inversion for small mean, Hormann's PTRD
//                    transformed rejection for large mean.
//   Binomial       - BINV inversion for small n*p, Hormann's BTRS
//                    transformed rejection for large n*p.
//   Hypergeometric - inversion from zero for small means, Stadlober's HRUA
//                    ratio-of-uniforms otherwise.
// Vector variants (multinomial, multivariate hypergeometric) are sequential
// conditional draws of the scalar ones.

namespace akt {

// ln(k!) via table for k < 10 and a 3-term Stirling series above.
inline double log_factorial(std::int64_t k) {
  static const double table[10] = {
      0.0,
      0.0,
      0.6931471805599453,
      1.791759469228055,
      3.1780538303479458,
      4.787491742782046,
      6.579251212010101,
      8.525161361065415,
      10.604602902745251,
      12.801827480081469,
  };
  if (k < 10) return table[k];
  const double x = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / x;
  const double inv3 = inv * inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.9189385332046727 + inv / 12.0 -
         inv3 / 360.0 + inv3 * inv * inv / 1260.0;
}

namespace detail {

inline std::int64_t poisson_inversion(Rng& rng, double lambda) {
  const double u = rng.next_double();
  double p = std::exp(-lambda);
  double cum = p;
  std::int64_t k = 0;
  while (u > cum && k < 2000) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cum += p;
  }
  return k;
}

// PTRD (Hormann 1993). Valid for lambda >= 10; we only call it above 30.
inline std::int64_t poisson_ptrd(Rng& rng, double lambda) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.next_double() - 0.5;
    const double v = rng.next_double_pos();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::int64_t>(kf);
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -lambda + kf * loglam - log_factorial(k);
    if (lhs <= rhs) return k;
  }
}

// BINV inversion; requires p <= 1/2 and modest n*p.
inline std::int64_t binomial_inversion(Rng& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  double r = std::exp(static_cast<double>(n) * std::log1p(-p));
  double u = rng.next_double();
  std::int64_t x = 0;
  while (u > r) {
    u -= r;
    ++x;
    if (x > n) return n;
    r *= a / static_cast<double>(x) - s;
  }
  return x;
}

// BTRS (Hormann 1993). Requires p <= 1/2 and n*p >= 10.
inline std::int64_t binomial_btrs(Rng& rng, std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double urvr = 0.86 * v_r;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const auto mode = static_cast<std::int64_t>(std::floor((nd + 1.0) * p));
  const double h = log_factorial(mode) + log_factorial(n - mode);

  for (;;) {
    double u;
    double v = rng.next_double();
    if (v <= urvr) {
      u = v / v_r - 0.43;
      const double kf =
          std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + c);
      return static_cast<std::int64_t>(kf);
    }
    if (v >= v_r) {
      u = rng.next_double() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = rng.next_double() * v_r;
    }
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + c);
    if (kf < 0.0 || kf > nd) continue;
    const auto k = static_cast<std::int64_t>(kf);
    v = v * alpha / (a / (us * us) + b);
    const double rhs = h - log_factorial(k) - log_factorial(n - k) +
                       (kf - static_cast<double>(mode)) * lpq;
    if (std::log(v) <= rhs) return k;
  }
}

inline double log_choose(std::int64_t n, std::int64_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Inversion from the bottom of the support, for small-spread cases.
inline std::int64_t hypergeometric_inversion(Rng& rng, std::int64_t good,
                                             std::int64_t bad,
                                             std::int64_t sample) {
  const std::int64_t total = good + bad;
  const std::int64_t lo = std::max<std::int64_t>(0, sample - bad);
  const std::int64_t hi = std::min(good, sample);
  const double logp0 = log_choose(good, lo) + log_choose(bad, sample - lo) -
                       log_choose(total, sample);
  double p = std::exp(logp0);
  double u = rng.next_double();
  std::int64_t x = lo;
  while (u > p && x < hi) {
    u -= p;
    // p(x+1)/p(x) = (good-x)(sample-x) / ((x+1)(bad-sample+x+1))
    const double num =
        static_cast<double>(good - x) * static_cast<double>(sample - x);
    ++x;
    const double den =
        static_cast<double>(x) * static_cast<double>(bad - sample + x);
    p *= num / den;
  }
  return x;
}

// HRUA ratio-of-uniforms (Stadlober 1990), as popularized by numpy.
inline std::int64_t hypergeometric_hrua(Rng& rng, std::int64_t good,
                                        std::int64_t bad, std::int64_t sample) {
  constexpr double d1 = 1.7155277699214135;  // 2*sqrt(2/e)
  constexpr double d2 = 0.8989161620588988;  // 3 - 2*sqrt(3/e)

  const std::int64_t popsize = good + bad;
  const std::int64_t mingoodbad = std::min(good, bad);
  const std::int64_t maxgoodbad = std::max(good, bad);
  const std::int64_t m = std::min(sample, popsize - sample);
  const double d4 = static_cast<double>(mingoodbad) / static_cast<double>(popsize);
  const double d5 = 1.0 - d4;
  const double d6 = static_cast<double>(m) * d4 + 0.5;
  const double d7 = std::sqrt(static_cast<double>(popsize - m) *
                                  static_cast<double>(sample) * d4 * d5 /
                                  static_cast<double>(popsize - 1) +
                              0.5);
  const double d8 = d1 * d7 + d2;
  const auto d9 = static_cast<std::int64_t>(
      static_cast<double>(m + 1) * static_cast<double>(mingoodbad + 1) /
      static_cast<double>(popsize + 2));
  const double d10 = log_factorial(d9) + log_factorial(mingoodbad - d9) +
                     log_factorial(m - d9) +
                     log_factorial(maxgoodbad - m + d9);
  const double d11 = std::min(static_cast<double>(std::min(m, mingoodbad) + 1),
                              std::floor(d6 + 16.0 * d7));

  std::int64_t z = 0;
  for (;;) {
    const double x = rng.next_double_pos();
    const double y = rng.next_double();
    const double w = d6 + d8 * (y - 0.5) / x;
    if (w < 0.0 || w >= d11) continue;
    z = static_cast<std::int64_t>(std::floor(w));
    const double t = d10 - (log_factorial(z) + log_factorial(mingoodbad - z) +
                            log_factorial(m - z) +
                            log_factorial(maxgoodbad - m + z));
    if (x * (4.0 - x) - 3.0 <= t) break;
    if (x * (x - t) >= 1.0) continue;
    if (2.0 * std::log(x) <= t) break;
  }
  if (good > bad) z = m - z;
  if (m < sample) z = good - z;
  return z;
}

}  // namespace detail

// Poisson(lambda) variate. lambda >= 0.
inline std::int64_t draw_poisson(Rng& rng, double lambda) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("draw_poisson: lambda must be finite and >= 0");
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) return detail::poisson_inversion(rng, lambda);
  return detail::poisson_ptrd(rng, lambda);
}

// Binomial(n, p) variate.
inline std::int64_t draw_binomial(Rng& rng, std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("draw_binomial: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("draw_binomial: p must lie in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  const bool flipped = p > 0.5;
  const double ps = flipped ? 1.0 - p : p;
  const double np = static_cast<double>(n) * ps;
  const std::int64_t x = np < 30.0 ? detail::binomial_inversion(rng, n, ps)
                                   : detail::binomial_btrs(rng, n, ps);
  return flipped ? n - x : x;
}

// Number of "good" items in a size-`sample` draw without replacement from a
// population with `good` good and `bad` bad items.
inline std::int64_t draw_hypergeometric(Rng& rng, std::int64_t good,
                                        std::int64_t bad, std::int64_t sample) {
  if (good < 0 || bad < 0 || sample < 0 || sample > good + bad)
    throw std::invalid_argument("draw_hypergeometric: invalid parameters");
  if (sample == 0 || good == 0) return 0;
  if (bad == 0) return sample;
  const double mean = static_cast<double>(sample) *
                      static_cast<double>(std::min(good, bad)) /
                      static_cast<double>(good + bad);
  const std::int64_t msample = std::min(sample, good + bad - sample);
  if (msample < 10 || mean < 25.0)
    return detail::hypergeometric_inversion(rng, good, bad, sample);
  return detail::hypergeometric_hrua(rng, good, bad, sample);
}

// Multinomial counts: `trials` draws over categories with probabilities
// `probs` (assumed to sum to 1 up to rounding).
inline std::vector<std::int64_t> draw_multinomial(Rng& rng, std::int64_t trials,
                                                  std::span<const double> probs) {
  std::vector<std::int64_t> out(probs.size(), 0);
  double rest = 1.0;
  std::int64_t left = trials;
  for (std::size_t i = 0; i + 1 < probs.size() && left > 0; ++i) {
    const double pi = rest > 0.0 ? std::min(1.0, std::max(0.0, probs[i] / rest)) : 1.0;
    out[i] = draw_binomial(rng, left, pi);
    left -= out[i];
    rest -= probs[i];
  }
  if (!probs.empty()) out[probs.size() - 1] += left;
  return out;
}

// Counts of a uniform without-replacement subsample of size `sample` taken
// from a population already binned as `bin_counts`.
inline std::vector<std::int64_t> draw_multivariate_hypergeometric(
    Rng& rng, std::span<const std::int64_t> bin_counts, std::int64_t sample) {
  std::int64_t population = 0;
  for (std::int64_t c : bin_counts) population += c;
  if (sample > population)
    throw std::invalid_argument(
        "draw_multivariate_hypergeometric: sample exceeds population");
  std::vector<std::int64_t> out(bin_counts.size(), 0);
  std::int64_t left = sample;
  std::int64_t rest = population;
  for (std::size_t i = 0; i < bin_counts.size() && left > 0; ++i) {
    rest -= bin_counts[i];
    out[i] = draw_hypergeometric(rng, bin_counts[i], rest, left);
    left -= out[i];
  }
  return out;
}

}  // namespace akt
