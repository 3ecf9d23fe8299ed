#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zbnet/network.hpp"

namespace zbnet {

struct DistributionRow {
  std::int64_t value;
  std::int64_t f;  // nodes with this value
  std::int64_t g;  // nodes with value >= this value
};

struct DistributionTable {
  std::vector<DistributionRow> rows;  // ascending value, positive values only
  std::int64_t zero_count = 0;
};

/// Frequency table of an integer-valued vector. Throws Error on negative or
/// non-integer values.
DistributionTable distribution(const std::vector<double>& values);
DistributionTable distribution(const NodeVector& v);

/// Approximate discrete maximum-likelihood exponent
///   alpha = 1 + n / sum(ln(x / (x_min - 1/2)))  over samples x >= x_min.
/// Throws NoSamplesAboveXmin when no sample reaches x_min, and Error when the sum
/// is not positive or x_min < 1.
double powerlaw_alpha(const std::vector<std::int64_t>& samples, std::int64_t x_min);

/// Exact discrete maximum-likelihood exponent, maximizing
///   -alpha * sum(ln x) - n * ln(zeta(alpha, x_min))  over alpha in (1, 10].
/// Same errors as powerlaw_alpha.
double powerlaw_alpha_discrete(const std::vector<std::int64_t>& samples, std::int64_t x_min);

/// Hurwitz zeta function sum over k >= q of k^-s, for s > 1 and q >= 1.
double hurwitz_zeta(double s, double q);

struct BradfordPoint {
  std::size_t rank;     // 1-based
  std::string journal;
  std::int64_t works;
  std::int64_t cumulative;
};

/// Journals by indexed-work count descending, ties by label, with cumulative sums.
std::vector<BradfordPoint> bradford_curve(const TwoModeNetwork& wj);

}  // namespace zbnet
