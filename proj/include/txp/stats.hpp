/*
 * Copyright 2026 The txpower Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TXP_STATS_HPP
#define TXP_STATS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace txp::stats {

struct EcdfPoint
{
	double value = 0.0;
	double fraction = 0.0;

	friend bool operator==(const EcdfPoint&, const EcdfPoint&) = default;
};

/// Empirical CDF at each distinct value, ascending.
inline std::vector<EcdfPoint> ecdf(std::span<const double> values)
{
	if (values.empty())
		throw std::invalid_argument("ecdf of an empty sample");
	std::vector<double> v(values.begin(), values.end());
	std::sort(v.begin(), v.end());
	const double n = static_cast<double>(v.size());
	std::vector<EcdfPoint> out;
	for (std::size_t i = 0; i < v.size(); ++i)
		if (i + 1 == v.size() || v[i + 1] != v[i])
			out.push_back({v[i], static_cast<double>(i + 1) / n});
	return out;
}

struct FiveNumber
{
	double min = 0.0;
	double q1 = 0.0;
	double median = 0.0;
	double q3 = 0.0;
	double max = 0.0;

	friend bool operator==(const FiveNumber&, const FiveNumber&) = default;
};

/// Quantile by linear interpolation between order statistics at p*(n-1).
inline double quantile_sorted(std::span<const double> sorted, double p)
{
	const double pos = p * static_cast<double>(sorted.size() - 1);
	const auto lo = static_cast<std::size_t>(std::floor(pos));
	const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
	return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline FiveNumber boxplot_stats(std::span<const double> values)
{
	if (values.empty())
		throw std::invalid_argument("boxplot of an empty sample");
	std::vector<double> v(values.begin(), values.end());
	std::sort(v.begin(), v.end());
	return {v.front(), quantile_sorted(v, 0.25), quantile_sorted(v, 0.5), quantile_sorted(v, 0.75), v.back()};
}

inline double median(std::span<const double> values) { return boxplot_stats(values).median; }

} // namespace txp::stats

#endif // TXP_STATS_HPP
