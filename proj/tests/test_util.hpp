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

#ifndef TXP_TESTS_TEST_UTIL_HPP
#define TXP_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <txp/txp.hpp>

namespace txp::testing {

/// Scenario with explicit cells and UEs on a 10x10 km area.
inline Scenario make_scenario(std::vector<Cell> cells, std::vector<Ue> ues, PowerDomain dom = {},
                              Area area = {10000.0, 10000.0})
{
	Scenario s;
	s.area = area;
	s.cells = std::move(cells);
	s.ues = std::move(ues);
	s.power_domain = dom;
	s.validate();
	return s;
}

/**
 * Random small network: up to \a max_cells sectors on random sites and a
 * handful of UEs, powers on a grid with \a levels levels.
 */
inline Scenario random_toy(std::mt19937_64& rng, int max_cells, int levels, int n_ues = 12)
{
	std::uniform_real_distribution<double> coord(500.0, 4500.0);
	std::uniform_int_distribution<int> ncells(1, max_cells);
	std::uniform_int_distribution<int> az(0, 2);
	PowerDomain dom{30.0, 30.0 + 4.0 * (levels - 1), 4.0};
	std::vector<Cell> cells;
	const int n = ncells(rng);
	for (int i = 0; i < n; ++i)
		cells.push_back(Cell{i, {coord(rng), coord(rng)}, 120.0 * az(rng), dom.min_dbm});
	std::vector<Ue> ues;
	for (int i = 0; i < n_ues; ++i)
		ues.push_back(Ue{i, {coord(rng), coord(rng)}});
	return make_scenario(std::move(cells), std::move(ues), dom, {5000.0, 5000.0});
}

/// Every assignment of the scenario's power grid to the listed cells (others from \a base).
inline std::vector<PowerAssignment> enumerate_assignments(const Scenario& s, const std::vector<CellId>& free,
                                                          const PowerAssignment& base)
{
	std::vector<PowerAssignment> out{base};
	for (CellId id : free)
	{
		std::vector<PowerAssignment> next;
		for (const auto& a : out)
			for (std::size_t k = 0; k < s.power_domain.level_count(); ++k)
			{
				PowerAssignment b = a;
				b.set(id, s.power_domain.level(k));
				next.push_back(b);
			}
		out = std::move(next);
	}
	return out;
}

/**
 * Total throughput computed straight from the link-budget primitives:
 * every candidate SINR evaluated one by one, argmax with lowest-id ties,
 * Round-Robin share. Independent of LinkMatrix.
 */
inline double brute_force_throughput(const Scenario& s, const PowerAssignment& a)
{
	const radio::McsTable mcs(s.radio);
	std::vector<CellId> serving;
	std::vector<double> sinr;
	for (const Ue& u : s.ues)
	{
		CellId best = -1;
		double best_sinr = -1e300;
		for (const Cell& c : s.cells)
		{
			const double v = radio::sinr_db(u.pos, c.id, a, s.cells, s.radio);
			if (v > best_sinr || (v == best_sinr && c.id < best))
			{
				best = c.id;
				best_sinr = v;
			}
		}
		serving.push_back(best);
		sinr.push_back(best_sinr);
	}
	std::map<CellId, int> load;
	for (CellId c : serving)
		++load[c];
	double total = 0.0;
	for (std::size_t i = 0; i < serving.size(); ++i)
		total += mcs.efficiency(sinr[i]) * s.radio.bandwidth_hz / load[serving[i]];
	return total;
}

} // namespace txp::testing

#endif // TXP_TESTS_TEST_UTIL_HPP
