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

#ifndef TXP_TOPOLOGY_HPP
#define TXP_TOPOLOGY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/scenario.hpp>

namespace txp {

inline constexpr double default_tx_power_dbm = 44.0;
inline constexpr double default_isd_m = 2000.0;

/// Shared settings for generated scenarios.
struct ScenarioDefaults
{
	radio::RadioConfig radio;
	PowerDomain power_domain;
	double tx_power_dbm = default_tx_power_dbm;
};

namespace detail {

inline void append_site(std::vector<Cell>& cells, const Position& site, double tx_power_dbm)
{
	CellId next = 0;
	for (const Cell& c : cells)
		next = std::max(next, c.id + 1);
	for (int k = 0; k < 3; ++k)
		cells.push_back(Cell{next + k, site, 120.0 * k, tx_power_dbm});
}

} // namespace detail

/**
 * Hexagonal lattice of \a n_sites three-sector sites.
 *
 * Rows alternate between w-1 and w sites (w = ceil(sqrt(n))), the short rows
 * shifted by isd/2, row pitch isd*sqrt(3)/2. The last row may be partial.
 * For 12 sites this gives rows of 3-4-3-2. The area bounds the lattice with
 * an isd/2 margin on every side.
 */
inline Scenario generate_honeycomb(int n_sites, double isd, const ScenarioDefaults& defaults = {})
{
	if (n_sites < 1)
		throw std::invalid_argument("honeycomb needs at least one site");
	if (!(isd > 0.0))
		throw std::invalid_argument("inter-site distance must be positive");

	const int w = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_sites))));
	const double pitch = isd * std::sqrt(3.0) / 2.0;
	const double margin = isd / 2.0;

	struct Row
	{
		int count;
		bool shifted;
	};
	std::vector<Row> rows;
	for (int placed = 0, r = 0; placed < n_sites; ++r)
	{
		const bool shifted = w > 1 && r % 2 == 0;
		const int full = shifted ? w - 1 : w;
		const int count = std::min(full, n_sites - placed);
		rows.push_back({count, shifted});
		placed += count;
	}

	Scenario s;
	s.radio = defaults.radio;
	s.power_domain = defaults.power_domain;
	s.area = {2.0 * margin + (w - 1) * isd, 2.0 * margin + (static_cast<double>(rows.size()) - 1.0) * pitch};

	for (std::size_t r = 0; r < rows.size(); ++r)
	{
		const double y = margin + static_cast<double>(r) * pitch;
		const double x0 = margin + (rows[r].shifted ? isd / 2.0 : 0.0);
		for (int i = 0; i < rows[r].count; ++i)
			detail::append_site(s.cells, {x0 + i * isd, y}, defaults.tx_power_dbm);
	}
	s.validate();
	return s;
}

/// nx*ny UEs at the centers of a regular partition of the area.
inline std::vector<Ue> generate_ue_grid(int nx, int ny, const Area& area)
{
	if (nx < 1 || ny < 1)
		throw std::invalid_argument("UE grid dimensions must be >= 1");
	std::vector<Ue> ues;
	ues.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
	const double dx = area.x / nx;
	const double dy = area.y / ny;
	UeId id = 0;
	for (int j = 0; j < ny; ++j)
		for (int i = 0; i < nx; ++i)
			ues.push_back(Ue{id++, {(i + 0.5) * dx, (j + 0.5) * dy}});
	return ues;
}

/// Copy of \a s with a three-sector site added at \a site; new ids follow the current maximum.
inline Scenario add_nomadic_site(const Scenario& s, const Position& site, double tx_power_dbm = default_tx_power_dbm)
{
	if (!s.area.contains(site))
		throw std::invalid_argument("nomadic site lies outside the scenario area");
	Scenario out = s;
	detail::append_site(out.cells, site, tx_power_dbm);
	out.validate();
	return out;
}

/// Ids of cells present in \a after but not in \a before.
inline std::vector<CellId> added_cells(const Scenario& before, const Scenario& after)
{
	const auto old_ids = before.cell_ids();
	std::vector<CellId> out;
	for (const Cell& c : after.cells)
		if (!old_ids.contains(c.id))
			out.push_back(c.id);
	return out;
}

/// Median nearest-neighbour distance between distinct sites; area diagonal for single-site networks.
inline double estimate_isd(const Scenario& s)
{
	std::vector<Position> sites;
	for (const Cell& c : s.cells)
		if (std::find(sites.begin(), sites.end(), c.site) == sites.end())
			sites.push_back(c.site);
	if (sites.size() < 2)
		return s.area.diagonal();

	std::vector<double> nearest;
	for (const Position& p : sites)
	{
		double best = std::numeric_limits<double>::infinity();
		for (const Position& q : sites)
			if (!(p == q))
				best = std::min(best, distance(p, q));
		nearest.push_back(best);
	}
	std::sort(nearest.begin(), nearest.end());
	return nearest[nearest.size() / 2];
}

} // namespace txp

#endif // TXP_TOPOLOGY_HPP
