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

#ifndef TXP_TYPES_HPP
#define TXP_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/geometry.hpp>

namespace txp {

using CellId = std::int64_t;
using UeId = std::int64_t;

/// One 120 degree sector antenna.
struct Cell
{
	CellId id = 0;
	Position site;
	double azimuth_deg = 0.0;
	double default_tx_power_dbm = 43.0;

	friend bool operator==(const Cell&, const Cell&) = default;
};

struct Ue
{
	UeId id = 0;
	Position pos;

	friend bool operator==(const Ue&, const Ue&) = default;
};

/// Discrete TX power grid min, min+step, ..., up to max.
struct PowerDomain
{
	double min_dbm = 10.0;
	double max_dbm = 46.0;
	double step_db = 2.0;

	friend bool operator==(const PowerDomain&, const PowerDomain&) = default;

	void validate() const
	{
		if (!(min_dbm < max_dbm))
			throw std::invalid_argument("power_domain: min must be below max");
		if (!(step_db > 0.0))
			throw std::invalid_argument("power_domain: step must be positive");
	}

	std::size_t level_count() const
	{
		return static_cast<std::size_t>(std::floor((max_dbm - min_dbm) / step_db + 1e-9)) + 1;
	}

	double level(std::size_t k) const { return min_dbm + static_cast<double>(k) * step_db; }

	bool contains(double dbm) const
	{
		return dbm >= min_dbm - 1e-9 && dbm <= max_dbm + 1e-9;
	}

	bool on_grid(double dbm) const
	{
		if (!contains(dbm))
			return false;
		const double k = (dbm - min_dbm) / step_db;
		return std::abs(k - std::round(k)) < 1e-6;
	}

	/// Index of the grid level equal to \a dbm; throws if off-grid.
	std::size_t index_of(double dbm) const
	{
		if (!on_grid(dbm))
			throw std::invalid_argument("power " + std::to_string(dbm) + " dBm is not on the power grid");
		return static_cast<std::size_t>(std::llround((dbm - min_dbm) / step_db));
	}
};

/// TX power per cell id, in dBm.
class PowerAssignment
{
public:
	using map_type = std::map<CellId, double>;

	PowerAssignment() = default;
	explicit PowerAssignment(map_type powers) : powers_(std::move(powers)) {}

	double at(CellId id) const
	{
		auto it = powers_.find(id);
		if (it == powers_.end())
			throw std::out_of_range("no power assigned to cell " + std::to_string(id));
		return it->second;
	}

	void set(CellId id, double dbm) { powers_[id] = dbm; }
	bool contains(CellId id) const { return powers_.contains(id); }
	std::size_t size() const { return powers_.size(); }
	const map_type& values() const { return powers_; }

	auto begin() const { return powers_.begin(); }
	auto end() const { return powers_.end(); }

	friend bool operator==(const PowerAssignment&, const PowerAssignment&) = default;

private:
	map_type powers_;
};

} // namespace txp

#endif // TXP_TYPES_HPP
