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

#ifndef TXP_OPTIMIZE_HPP
#define TXP_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/evaluate.hpp>
#include <txp/scenario.hpp>
#include <txp/sga.hpp>

namespace txp {

struct OptimizeOutcome
{
	PowerAssignment best_assignment;
	double best_objective = 0.0; // bit/s
	std::vector<double> objective_trace;
	std::size_t evaluations = 0;

	friend bool operator==(const OptimizeOutcome&, const OptimizeOutcome&) = default;
};

/// Called with every candidate assignment the optimizer evaluates.
using CandidateObserver = std::function<void(const PowerAssignment&)>;

/// Total network throughput in bit/s.
inline double objective(const Scenario& s, const PowerAssignment& a)
{
	return evaluate(s, a).total_throughput_bps;
}

/**
 * Runs the SGA over the power levels of \a free_cells. Every other cell
 * keeps its value from \a init in every candidate. An empty free set
 * returns \a init with its objective.
 */
inline OptimizeOutcome sga_optimize(const Scenario& s,
                                    const std::set<CellId>& free_cells,
                                    const PowerAssignment& init,
                                    const GaConfig& cfg,
                                    const CandidateObserver& observer = nullptr)
{
	s.check_assignment(init);
	cfg.validate();

	const LinkMatrix links(s);
	const std::vector<double> base_mw = links.tx_mw(init);

	std::vector<std::size_t> slot; // position of each free cell in scenario order
	std::vector<CellId> free_ids;
	for (CellId id : free_cells)
	{
		std::size_t k = 0;
		while (k < s.cells.size() && s.cells[k].id != id)
			++k;
		if (k == s.cells.size())
			throw std::invalid_argument("free cell " + std::to_string(id) + " is not in the scenario");
		slot.push_back(k);
		free_ids.push_back(id);
	}

	const PowerDomain& dom = s.power_domain;
	std::vector<double> level_mw(dom.level_count());
	for (std::size_t k = 0; k < level_mw.size(); ++k)
		level_mw[k] = radio::dbm_to_mw(dom.level(k));

	auto to_assignment = [&](std::span<const std::size_t> g) {
		PowerAssignment a = init;
		for (std::size_t i = 0; i < g.size(); ++i)
			a.set(free_ids[i], dom.level(g[i]));
		return a;
	};

	if (free_ids.empty())
	{
		if (observer)
			observer(init);
		const double f = links.total_throughput(base_mw);
		return {init, f, {f}, 1};
	}

	Genome seed(free_ids.size());
	for (std::size_t i = 0; i < free_ids.size(); ++i)
		seed[i] = dom.index_of(init.at(free_ids[i]));

	std::vector<double> mw = base_mw;
	auto fitness = [&](std::span<const std::size_t> g) {
		if (observer)
			observer(to_assignment(g));
		for (std::size_t i = 0; i < g.size(); ++i)
			mw[slot[i]] = level_mw[g[i]];
		return links.total_throughput(mw);
	};

	GaResult r = run_sga(free_ids.size(), level_mw.size(), seed, fitness, cfg);
	return {to_assignment(r.best), r.best_fitness, std::move(r.trace), r.evaluations};
}

/// Every cell free, starting from the scenario's default powers.
inline OptimizeOutcome global_reconfigure(const Scenario& s, const GaConfig& cfg)
{
	return sga_optimize(s, s.cell_ids(), s.default_assignment(), cfg);
}

/// Only \a subset is reconfigured; all other cells keep their \a baseline power.
inline OptimizeOutcome local_reconfigure(const Scenario& s,
                                         const std::set<CellId>& subset,
                                         const PowerAssignment& baseline,
                                         const GaConfig& cfg,
                                         const CandidateObserver& observer = nullptr)
{
	return sga_optimize(s, subset, baseline, cfg, observer);
}

/// Number of cells whose power differs between two assignments over the same ids.
inline int count_changed(const PowerAssignment& before, const PowerAssignment& after)
{
	if (before.size() != after.size())
		throw std::invalid_argument("count_changed: assignments cover different cells");
	int changed = 0;
	for (const auto& [id, p] : before)
	{
		if (!after.contains(id))
			throw std::invalid_argument("count_changed: cell " + std::to_string(id) + " missing from second assignment");
		if (after.at(id) != p)
			++changed;
	}
	return changed;
}

/// Ids whose power differs between two assignments over the same ids.
inline std::set<CellId> changed_cells(const PowerAssignment& before, const PowerAssignment& after)
{
	count_changed(before, after);
	std::set<CellId> out;
	for (const auto& [id, p] : before)
		if (after.at(id) != p)
			out.insert(id);
	return out;
}

} // namespace txp

#endif // TXP_OPTIMIZE_HPP
