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

#ifndef TXP_MCS_HPP
#define TXP_MCS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/radio.hpp>

namespace txp::radio {

/// One CQI row: modulation, code rate and its AWGN SINR threshold.
struct McsEntry
{
	int cqi = 0;
	int modulation_size = 0;   // M
	int code_rate_x1024 = 0;   // r * 1024
	double efficiency = 0.0;   // bits/s/Hz, r * log2(M)
	double sinr_threshold_db = 0.0;

	double code_rate() const { return code_rate_x1024 / 1024.0; }
};

/// SNR gap for an uncoded QAM target bit error rate.
inline double gamma_from_ber(double ber)
{
	if (!(ber > 0.0 && ber <= 0.2))
		throw std::domain_error("ber must lie in (0, 0.2]");
	return -(2.0 / 3.0) * std::log(5.0 * ber);
}

namespace detail {

struct PublishedCqi
{
	int modulation_size;
	int code_rate_x1024;
	double sinr_threshold_db;
};

// LTE 4-bit CQI table with AWGN thresholds at BER 5e-5.
inline constexpr std::array<PublishedCqi, 15> published_cqi{{
	{4, 78, -2.1054},
	{4, 120, -0.1083},
	{4, 193, 2.1776},
	{4, 308, 4.5647},
	{4, 449, 6.6514},
	{4, 602, 8.4275},
	{16, 378, 9.9379},
	{16, 490, 11.8495},
	{16, 616, 13.7624},
	{64, 466, 14.9370},
	{64, 567, 16.9703},
	{64, 666, 18.8734},
	{64, 772, 20.8506},
	{64, 873, 22.6980},
	{64, 948, 24.0546},
}};

} // namespace detail

inline constexpr double mcs_threshold_tolerance_db = 0.02;

/// SINR (dB) at which log2(1 + SINR/Gamma) reaches \a efficiency.
inline double threshold_for_efficiency_db(double efficiency, double gamma)
{
	return 10.0 * std::log10(gamma * (std::exp2(efficiency) - 1.0));
}

class McsTable
{
public:
	McsTable() : McsTable(RadioConfig{}) {}

	/**
	 * Builds the 15 CQI rows. Every threshold is recomputed from the row's
	 * efficiency and Gamma(ber); construction fails if any recomputed value
	 * deviates from the tabulated one by more than 0.02 dB.
	 */
	explicit McsTable(const RadioConfig& cfg) : gamma_(gamma_from_ber(cfg.ber))
	{
		entries_.reserve(detail::published_cqi.size());
		int cqi = 1;
		for (const auto& row : detail::published_cqi)
		{
			McsEntry e;
			e.cqi = cqi++;
			e.modulation_size = row.modulation_size;
			e.code_rate_x1024 = row.code_rate_x1024;
			e.efficiency = e.code_rate() * std::log2(static_cast<double>(row.modulation_size));
			e.sinr_threshold_db = row.sinr_threshold_db;

			const double recomputed = threshold_for_efficiency_db(e.efficiency, gamma_);
			if (std::abs(recomputed - row.sinr_threshold_db) > mcs_threshold_tolerance_db)
				throw std::logic_error("MCS table integrity: CQI " + std::to_string(e.cqi) + " threshold "
				                       + std::to_string(recomputed) + " dB deviates from "
				                       + std::to_string(row.sinr_threshold_db) + " dB");
			entries_.push_back(e);
		}
	}

	const std::vector<McsEntry>& entries() const { return entries_; }
	double gamma() const { return gamma_; }
	double max_efficiency() const { return entries_.back().efficiency; }
	double outage_threshold_db() const { return entries_.front().sinr_threshold_db; }

	/// Largest CQI whose threshold is at or below \a sinr_db, 0 in outage.
	int cqi(double sinr_db) const
	{
		auto it = std::upper_bound(entries_.begin(), entries_.end(), sinr_db,
		                           [](double s, const McsEntry& e) { return s < e.sinr_threshold_db; });
		return static_cast<int>(it - entries_.begin());
	}

	/// log2(1 + SINR/Gamma), zero below CQI 1 and capped at the CQI 15 efficiency.
	double efficiency(double sinr_db) const
	{
		if (!(sinr_db >= outage_threshold_db()))
			return 0.0;
		const double eta = std::log2(1.0 + dbm_to_mw(sinr_db) / gamma_);
		return std::min(eta, max_efficiency());
	}

private:
	double gamma_;
	std::vector<McsEntry> entries_;
};

inline std::vector<McsEntry> build_mcs_table(const RadioConfig& cfg)
{
	return McsTable(cfg).entries();
}

inline double efficiency_from_sinr(double sinr_db, const RadioConfig& cfg)
{
	return McsTable(cfg).efficiency(sinr_db);
}

inline int cqi_from_sinr(double sinr_db, const McsTable& table)
{
	return table.cqi(sinr_db);
}

} // namespace txp::radio

#endif // TXP_MCS_HPP
