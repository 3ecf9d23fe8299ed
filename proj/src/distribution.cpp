#include "zbnet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/tools/minima.hpp>

#include "zbnet/errors.hpp"

namespace zbnet {

namespace {

struct TailSample {
  std::int64_t n = 0;
  double log_sum = 0.0;  // sum of ln x
  double approx_sum = 0.0;  // sum of ln(x / (x_min - 1/2))
};

TailSample tail(const std::vector<std::int64_t>& samples, std::int64_t x_min) {
  if (x_min < 1) throw Error("x_min must be at least 1");
  TailSample t;
  bool spread = false;
  const double shift = static_cast<double>(x_min) - 0.5;
  for (std::int64_t x : samples) {
    if (x < x_min) continue;
    ++t.n;
    t.log_sum += std::log(static_cast<double>(x));
    t.approx_sum += std::log(static_cast<double>(x) / shift);
    spread = spread || x != x_min;
  }
  if (t.n == 0) throw NoSamplesAboveXmin("no sample reaches x_min = " + std::to_string(x_min));
  // With every sample at x_min the likelihood grows without bound in alpha.
  if (!spread) throw Error("all samples equal x_min; the exponent is not identifiable");
  return t;
}

}  // namespace

DistributionTable distribution(const std::vector<double>& values) {
  std::map<std::int64_t, std::int64_t> f;
  DistributionTable table;
  for (double v : values) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) throw Error("distribution needs non-negative integers");
    if (v == 0.0) {
      ++table.zero_count;
    } else {
      ++f[static_cast<std::int64_t>(v)];
    }
  }
  std::int64_t g = 0;
  for (auto& [value, count] : f) g += count;
  for (auto& [value, count] : f) {
    table.rows.push_back({value, count, g});
    g -= count;
  }
  return table;
}

DistributionTable distribution(const NodeVector& v) { return distribution(v.values); }

double powerlaw_alpha(const std::vector<std::int64_t>& samples, std::int64_t x_min) {
  TailSample t = tail(samples, x_min);
  return 1.0 + static_cast<double>(t.n) / t.approx_sum;
}

double hurwitz_zeta(double s, double q) {
  // Direct terms, then the Euler-Maclaurin tail from a = q + N.
  constexpr int kDirect = 12;
  static constexpr double kB2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;            // s (s+1) ... (s+2j-2)
  double factorial = 2.0;       // (2j)!
  double power = std::pow(a, -s - 1.0);
  for (int j = 1; j <= 7; ++j) {
    sum += kB2j[j - 1] / factorial * rising * power;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
    power /= a * a;
  }
  return sum;
}

double powerlaw_alpha_discrete(const std::vector<std::int64_t>& samples, std::int64_t x_min) {
  TailSample t = tail(samples, x_min);
  const double mean_log = t.log_sum / static_cast<double>(t.n);
  const double q = static_cast<double>(x_min);
  auto negative_log_likelihood = [&](double alpha) { return alpha * mean_log + std::log(hurwitz_zeta(alpha, q)); };
  auto [alpha, value] = boost::math::tools::brent_find_minima(negative_log_likelihood, 1.0 + 1e-6, 10.0, 50);
  (void)value;
  return alpha;
}

std::vector<BradfordPoint> bradford_curve(const TwoModeNetwork& wj) {
  NodeVector counts = degrees(wj, Side::Cols, false);
  std::vector<std::pair<std::int64_t, std::string>> journals;
  for (Index j = 0; j < counts.values.size(); ++j) {
    auto c = static_cast<std::int64_t>(counts.values[j]);
    if (c > 0) journals.emplace_back(c, wj.cols().label(j));
  }
  std::sort(journals.begin(), journals.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<BradfordPoint> out;
  std::int64_t cumulative = 0;
  for (std::size_t i = 0; i < journals.size(); ++i) {
    cumulative += journals[i].first;
    out.push_back({i + 1, journals[i].second, journals[i].first, cumulative});
  }
  return out;
}

}  // namespace zbnet
