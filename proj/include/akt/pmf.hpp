#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Explicit distributions over the ordered domain {0, ..., n-1} and the
// interval-partition machinery shared by the distance computations and the
// testers. All values are immutable after construction.

namespace akt {

// Neumaier-compensated accumulator; used wherever a sum feeds a verdict.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Probability mass function over {0, ..., n-1}; weights normalized to sum 1.
struct Pmf {
  std::vector<double> weights;

  std::int64_t n() const { return static_cast<std::int64_t>(weights.size()); }
};

inline Pmf make_pmf(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("pmf: domain must be non-empty");
  KahanSum total;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("pmf: weights must be finite and >= 0");
    total.add(w);
  }
  const double sum = total.value();
  if (sum <= 0.0) throw std::invalid_argument("pmf: weights must not all be zero");
  for (double& w : weights) w /= sum;
  return Pmf{std::move(weights)};
}

inline Pmf uniform_pmf(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("uniform_pmf: n must be >= 1");
  return Pmf{std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n))};
}

// Exact pmf: point i has mass alphas[i] / denom.
struct RationalPmf {
  std::vector<std::int64_t> alphas;
  std::int64_t denom = 0;

  std::int64_t n() const { return static_cast<std::int64_t>(alphas.size()); }
};

inline RationalPmf make_rational_pmf(std::vector<std::int64_t> alphas) {
  if (alphas.empty())
    throw std::invalid_argument("rational pmf: domain must be non-empty");
  std::int64_t denom = 0;
  for (std::int64_t a : alphas) {
    if (a < 0) throw std::invalid_argument("rational pmf: weights must be >= 0");
    if (a > std::numeric_limits<std::int64_t>::max() - denom)
      throw std::overflow_error("rational pmf: weight sum overflows");
    denom += a;
  }
  if (denom == 0)
    throw std::invalid_argument("rational pmf: weights must not all be zero");
  return RationalPmf{std::move(alphas), denom};
}

inline Pmf to_pmf(const RationalPmf& r) {
  std::vector<double> w(r.alphas.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = static_cast<double>(r.alphas[i]) / static_cast<double>(r.denom);
  return Pmf{std::move(w)};
}

inline RationalPmf uniform_rational_pmf(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("uniform_rational_pmf: n must be >= 1");
  return RationalPmf{std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), n};
}

// Ordered partition of {0, ..., n-1} into contiguous intervals. Interval i
// covers indices [bounds[i], bounds[i+1]); bounds is strictly increasing with
// bounds.front() == 0 and bounds.back() == n.
struct IntervalPartition {
  std::vector<std::int64_t> bounds;

  std::int64_t ell() const { return static_cast<std::int64_t>(bounds.size()) - 1; }
  std::int64_t domain_size() const { return bounds.back(); }
  std::int64_t begin(std::int64_t i) const { return bounds[static_cast<std::size_t>(i)]; }
  std::int64_t end(std::int64_t i) const { return bounds[static_cast<std::size_t>(i) + 1]; }
  std::int64_t length(std::int64_t i) const { return end(i) - begin(i); }
};

inline IntervalPartition make_partition(std::vector<std::int64_t> bounds) {
  if (bounds.size() < 2 || bounds.front() != 0)
    throw std::invalid_argument("partition: bounds must start at 0 and define >= 1 interval");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] <= bounds[i - 1])
      throw std::invalid_argument("partition: bounds must be strictly increasing");
  return IntervalPartition{std::move(bounds)};
}

// Partition of {0, ..., n-1} into ell equal intervals; requires ell | n.
inline IntervalPartition equal_partition(std::int64_t n, std::int64_t ell) {
  if (ell < 1 || n % ell != 0)
    throw std::invalid_argument("equal_partition: ell must divide n");
  std::vector<std::int64_t> bounds(static_cast<std::size_t>(ell) + 1);
  const std::int64_t w = n / ell;
  for (std::int64_t i = 0; i <= ell; ++i)
    bounds[static_cast<std::size_t>(i)] = i * w;
  return IntervalPartition{std::move(bounds)};
}

// A distance value plus, for the partition-maximizing metrics, the partition
// achieving it.
struct DistanceReport {
  double value = 0.0;
  std::optional<IntervalPartition> witness;
};

inline void check_same_domain(std::int64_t np, std::int64_t nq, const char* what) {
  if (np != nq)
    throw std::invalid_argument(std::string(what) + ": domain sizes differ (" +
                                std::to_string(np) + " vs " + std::to_string(nq) + ")");
}

// Interval masses of p under a partition of p's domain; mass is preserved
// exactly up to compensated rounding.
inline Pmf reduce_pmf(const Pmf& p, const IntervalPartition& part) {
  check_same_domain(p.n(), part.domain_size(), "reduce_pmf");
  std::vector<double> out(static_cast<std::size_t>(part.ell()));
  for (std::int64_t i = 0; i < part.ell(); ++i) {
    KahanSum s;
    for (std::int64_t j = part.begin(i); j < part.end(i); ++j)
      s.add(p.weights[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(i)] = s.value();
  }
  return Pmf{std::move(out)};
}

// Each point split into `factor` equal sub-points. Preserves all interval
// distances against the correspondingly refined counterpart.
inline Pmf refine_pmf(const Pmf& p, std::int64_t factor) {
  if (factor < 1) throw std::invalid_argument("refine_pmf: factor must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p.n() * factor));
  for (double w : p.weights)
    for (std::int64_t s = 0; s < factor; ++s) out.push_back(w / static_cast<double>(factor));
  return Pmf{std::move(out)};
}

// (1 - t) * U_n + t * q.
inline Pmf mix_with_uniform(const Pmf& q, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("mix_with_uniform: t must lie in [0, 1]");
  const double u = 1.0 / static_cast<double>(q.n());
  std::vector<double> w(q.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = (1.0 - t) * u + t * q.weights[i];
  return Pmf{std::move(w)};
}

}  // namespace akt
