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

#ifndef TXP_SCENARIO_HPP
#define TXP_SCENARIO_HPP

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/radio.hpp>
#include <txp/types.hpp>

namespace txp {

struct Area
{
	double x = 0.0;
	double y = 0.0;

	friend bool operator==(const Area&, const Area&) = default;

	bool contains(const Position& p) const
	{
		return p.x >= 0.0 && p.x <= x && p.y >= 0.0 && p.y <= y;
	}

	Position center() const { return {x / 2.0, y / 2.0}; }
	double diagonal() const { return std::hypot(x, y); }
};

/// Immutable network snapshot.
struct Scenario
{
	Area area;
	std::vector<Cell> cells;
	std::vector<Ue> ues;
	radio::RadioConfig radio;
	PowerDomain power_domain;

	friend bool operator==(const Scenario&, const Scenario&) = default;

	void validate() const
	{
		if (!(area.x > 0.0 && area.y > 0.0))
			throw std::invalid_argument("area: x and y must be positive");
		power_domain.validate();
		radio.validate();

		std::set<CellId> cell_ids;
		for (const Cell& c : cells)
		{
			if (!cell_ids.insert(c.id).second)
				throw std::invalid_argument("cells: duplicate id " + std::to_string(c.id));
			if (!std::isfinite(c.site.x) || !std::isfinite(c.site.y))
				throw std::invalid_argument("cells: non-finite site for cell " + std::to_string(c.id));
			if (!(c.azimuth_deg >= 0.0 && c.azimuth_deg < 360.0))
				throw std::invalid_argument("cells: azimuth of cell " + std::to_string(c.id) + " outside [0, 360)");
			if (!power_domain.contains(c.default_tx_power_dbm))
				throw std::invalid_argument("cells: default power of cell " + std::to_string(c.id)
				                            + " outside the power domain");
		}
		std::set<UeId> ue_ids;
		for (const Ue& u : ues)
		{
			if (!ue_ids.insert(u.id).second)
				throw std::invalid_argument("ues: duplicate id " + std::to_string(u.id));
			if (!std::isfinite(u.pos.x) || !std::isfinite(u.pos.y))
				throw std::invalid_argument("ues: non-finite position for UE " + std::to_string(u.id));
		}
	}

	const Cell& cell(CellId id) const
	{
		for (const Cell& c : cells)
			if (c.id == id)
				return c;
		throw std::out_of_range("no cell with id " + std::to_string(id));
	}

	std::set<CellId> cell_ids() const
	{
		std::set<CellId> ids;
		for (const Cell& c : cells)
			ids.insert(c.id);
		return ids;
	}

	PowerAssignment default_assignment() const
	{
		PowerAssignment a;
		for (const Cell& c : cells)
			a.set(c.id, c.default_tx_power_dbm);
		return a;
	}

	/// Throws unless \a a covers exactly this scenario's cells with on-grid powers.
	void check_assignment(const PowerAssignment& a) const
	{
		if (a.size() != cells.size())
			throw std::invalid_argument("power assignment covers " + std::to_string(a.size()) + " cells, scenario has "
			                            + std::to_string(cells.size()));
		for (const Cell& c : cells)
		{
			if (!a.contains(c.id))
				throw std::invalid_argument("power assignment misses cell " + std::to_string(c.id));
			if (!power_domain.on_grid(a.at(c.id)))
				throw std::invalid_argument("power of cell " + std::to_string(c.id) + " is off the power grid");
		}
	}
};

} // namespace txp

#endif // TXP_SCENARIO_HPP
