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

#ifndef TXP_RADIO_HPP
#define TXP_RADIO_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/geometry.hpp>
#include <txp/types.hpp>

namespace txp::radio {

inline constexpr double speed_of_light = 3.0e8; // m/s

/**
 * SUI terrain category.
 *
 * - A: hilly terrain with moderate-to-heavy tree density (highest loss).
 * - B: intermediate path loss (suburban).
 * - C: flat terrain with light tree density (lowest loss).
 */
enum class Terrain { A, B, C };

struct SuiConstants
{
	double a;
	double b; // 1/m
	double c; // m
};

inline SuiConstants sui_constants(Terrain t)
{
	switch (t)
	{
		case Terrain::A: return {4.6, 0.0075, 12.6};
		case Terrain::B: return {4.0, 0.0065, 17.1};
		case Terrain::C: return {3.6, 0.0050, 20.0};
	}
	throw std::invalid_argument("unknown SUI terrain");
}

struct RadioConfig
{
	double frequency_hz = 2.0e9;
	double bandwidth_hz = 10.0e6;
	double noise_figure_db = 9.0;
	double reference_distance_m = 100.0;
	double bs_height_m = 30.0;
	double ue_height_m = 1.5;
	Terrain sui_terrain = Terrain::B;
	double antenna_beamwidth_deg = 120.0;
	double antenna_backlobe_attenuation_db = 20.0;
	double ber = 0.00005;

	friend bool operator==(const RadioConfig&, const RadioConfig&) = default;

	void validate() const
	{
		if (!(frequency_hz > 0.0))
			throw std::invalid_argument("radio: frequency must be positive");
		if (!(bandwidth_hz > 0.0))
			throw std::invalid_argument("radio: bandwidth must be positive");
		if (!(reference_distance_m > 0.0))
			throw std::invalid_argument("radio: reference distance must be positive");
		if (!(ue_height_m > 0.0 && bs_height_m > ue_height_m))
			throw std::invalid_argument("radio: heights must satisfy bs_height > ue_height > 0");
		if (!(antenna_beamwidth_deg > 0.0 && antenna_beamwidth_deg <= 360.0))
			throw std::invalid_argument("radio: antenna beamwidth must be in (0, 360]");
		if (!(antenna_backlobe_attenuation_db >= 0.0))
			throw std::invalid_argument("radio: antenna back-lobe attenuation must be >= 0");
		if (!(ber > 0.0 && ber < 0.2))
			throw std::invalid_argument("radio: ber must be in (0, 0.2)");
	}

	double wavelength_m() const { return speed_of_light / frequency_hz; }
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Thermal noise over the configured bandwidth plus the UE noise figure.
inline double noise_floor_dbm(const RadioConfig& cfg)
{
	return -174.0 + 10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
}

inline double free_space_path_loss_db(double d, const RadioConfig& cfg)
{
	if (!(d > 0.0))
		throw std::domain_error("free-space path loss needs a positive distance");
	return 20.0 * std::log10(4.0 * std::numbers::pi * d / cfg.wavelength_m());
}

/**
 * Stanford University Interim (SUI) path loss, shadowing fixed to zero.
 *
 * PL = A + 10 gamma log10(d/d0) + Xf + Xh, with A the free-space loss at d0,
 * gamma = a - b hb + c/hb, Xf = 6 log10(f / 2 GHz) and Xh the receiver
 * height correction. Distances below d0 are clamped to d0.
 */
inline double sui_path_loss_db(double d, const RadioConfig& cfg)
{
	if (!(d > 0.0))
		throw std::domain_error("SUI path loss needs a positive distance");

	const SuiConstants k = sui_constants(cfg.sui_terrain);
	const double d0 = cfg.reference_distance_m;
	const double hb = cfg.bs_height_m;
	const double A = free_space_path_loss_db(d0, cfg);
	const double gamma = k.a - k.b * hb + k.c / hb;
	const double Xf = 6.0 * std::log10(cfg.frequency_hz / 2.0e9);
	const double Xh = (cfg.sui_terrain == Terrain::C ? -20.0 : -10.8) * std::log10(cfg.ue_height_m / 2.0);

	return A + 10.0 * gamma * std::log10(std::max(d, d0) / d0) + Xf + Xh;
}

/// Flat sector pattern: no loss inside the beam, back-lobe attenuation outside.
inline double antenna_attenuation_db(double bearing_offset_deg, const RadioConfig& cfg = RadioConfig{})
{
	const double off = std::abs(normalize_bearing(bearing_offset_deg));
	return off <= cfg.antenna_beamwidth_deg / 2.0 ? 0.0 : cfg.antenna_backlobe_attenuation_db;
}

namespace detail {

// Path loss plus antenna attenuation. A receiver on top of the site is
// treated as boresight at the reference distance.
inline double link_loss_db(const Cell& cell, const Position& pos, const RadioConfig& cfg)
{
	const double d = distance(cell.site, pos);
	if (d == 0.0)
		return sui_path_loss_db(cfg.reference_distance_m, cfg);
	const double offset = bearing_deg(cell.site, pos) - cell.azimuth_deg;
	return sui_path_loss_db(d, cfg) + antenna_attenuation_db(offset, cfg);
}

} // namespace detail

inline double rx_power_dbm(const Cell& cell, double tx_power_dbm, const Position& ue_pos, const RadioConfig& cfg)
{
	if (cell.site == ue_pos)
		throw std::domain_error("receiver coincides with the site of cell " + std::to_string(cell.id));
	return tx_power_dbm - detail::link_loss_db(cell, ue_pos, cfg);
}

/// SINR in dB from received powers in dBm, combined in the linear domain.
inline double sinr_from_powers_db(double serving_dbm, std::span<const double> interferers_dbm, double noise_dbm)
{
	double denom = dbm_to_mw(noise_dbm);
	for (double p : interferers_dbm)
		denom += dbm_to_mw(p);
	return mw_to_dbm(dbm_to_mw(serving_dbm) / denom);
}

/// Received power and SINR at one location for a given serving cell.
struct LinkBudgetSample
{
	double rx_power_dbm = 0.0;
	double sinr_db = 0.0;
	CellId serving_cell = 0;
};

/**
 * SINR at \a ue_pos when served by cell \a serving. Every other cell in
 * \a cells is an interferer.
 */
inline LinkBudgetSample link_budget(const Position& ue_pos,
                                    CellId serving,
                                    const PowerAssignment& assignment,
                                    std::span<const Cell> cells,
                                    const RadioConfig& cfg)
{
	auto srv = std::find_if(cells.begin(), cells.end(), [serving](const Cell& c) { return c.id == serving; });
	if (srv == cells.end())
		throw std::invalid_argument("unknown serving cell " + std::to_string(serving));

	const double s_dbm = assignment.at(serving) - detail::link_loss_db(*srv, ue_pos, cfg);
	double denom = dbm_to_mw(noise_floor_dbm(cfg));
	for (const Cell& c : cells)
	{
		if (c.id == serving)
			continue;
		denom += dbm_to_mw(assignment.at(c.id) - detail::link_loss_db(c, ue_pos, cfg));
	}
	return {s_dbm, mw_to_dbm(dbm_to_mw(s_dbm) / denom), serving};
}

inline double sinr_db(const Position& ue_pos,
                      CellId serving,
                      const PowerAssignment& assignment,
                      std::span<const Cell> cells,
                      const RadioConfig& cfg)
{
	return link_budget(ue_pos, serving, assignment, cells, cfg).sinr_db;
}

} // namespace txp::radio

#endif // TXP_RADIO_HPP
