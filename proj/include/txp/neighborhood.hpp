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

#ifndef TXP_NEIGHBORHOOD_HPP
#define TXP_NEIGHBORHOOD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <txp/optimize.hpp>
#include <txp/radio.hpp>
#include <txp/topology.hpp>

namespace txp {

/// Outcome of one neighbourhood-restricted reconfiguration.
struct ReconfigReport
{
	std::string method;
	std::set<CellId> selected; // cells the optimizer was allowed to change
	std::set<CellId> changed;
	int changed_count = 0;
	double throughput_before_bps = 0.0;
	double throughput_after_bps = 0.0;
	PowerAssignment assignment;

	struct Step
	{
		double radius_m = 0.0;
		std::size_t subset_size = 0;
		double objective_bps = 0.0;
	};
	std::vector<Step> steps; // iterative method only
};

/**
 * Distance at which a free-space signal sent at \a tx_power_dbm drops to the
 * noise floor, capped at \a max_radius.
 */
inline double noise_reach_radius(double tx_power_dbm,
                                 const radio::RadioConfig& cfg,
                                 double max_radius = std::numeric_limits<double>::infinity())
{
	const double budget = tx_power_dbm - radio::noise_floor_dbm(cfg);
	if (!(budget > 0.0))
		throw std::domain_error("TX power must exceed the noise floor");
	const double d = cfg.wavelength_m() / (4.0 * std::numbers::pi) * std::pow(10.0, budget / 20.0);
	return std::min(d, max_radius);
}

inline std::set<CellId> cells_within(const Position& center, double radius, const Scenario& s)
{
	if (radius < 0.0)
		throw std::invalid_argument("radius must be non-negative");
	std::set<CellId> out;
	for (const Cell& c : s.cells)
		if (distance(center, c.site) <= radius)
			out.insert(c.id);
	return out;
}

struct CircleSchedule
{
	Position center;
	double initial_radius = 0.0;
	double growth_factor = 1.5;
	double max_radius = 0.0;

	void validate() const
	{
		if (!(initial_radius > 0.0))
			throw std::invalid_argument("circle schedule: initial radius must be positive");
		if (!(growth_factor > 1.0))
			throw std::invalid_argument("circle schedule: growth factor must exceed 1");
		if (!(max_radius > 0.0))
			throw std::invalid_argument("circle schedule: max radius must be positive");
	}

	/// Radius of circle \a k, capped.
	double radius(int k) const { return std::min(initial_radius * std::pow(growth_factor, k), max_radius); }

	/// Upper bound on optimization steps the schedule can produce.
	int max_steps() const
	{
		if (initial_radius >= max_radius)
			return 1;
		return static_cast<int>(std::ceil(std::log(max_radius / initial_radius) / std::log(growth_factor))) + 1;
	}
};

/**
 * Default schedule for a nomadic site at \a center: the first radius is the
 * noise reach of the default power, limited to twice the inter-site
 * distance; growth factor 1.5; capped at the area diagonal.
 */
inline CircleSchedule default_circle_schedule(const Scenario& s, const Position& center,
                                              double tx_power_dbm = default_tx_power_dbm)
{
	CircleSchedule c;
	c.center = center;
	c.max_radius = s.area.diagonal();
	c.initial_radius = std::min(noise_reach_radius(tx_power_dbm, s.radio, c.max_radius), 2.0 * estimate_isd(s));
	return c;
}

inline constexpr double iterative_convergence_tolerance = 1e-3;

/**
 * Grows a circle around \a sched.center and reoptimizes the cells inside it
 * from \a baseline. Stops when two consecutive steps give the same
 * assignment, when the objective moves by less than 0.1 %, or once the
 * capped radius has been used. Circles that add no new cell are skipped.
 */
inline ReconfigReport iterative_range_reconfigure(const Scenario& s,
                                                  const CircleSchedule& sched,
                                                  const GaConfig& ga,
                                                  const PowerAssignment& baseline)
{
	sched.validate();
	if (!s.area.contains(sched.center))
		throw std::invalid_argument("reconfiguration center lies outside the area");

	ReconfigReport rep;
	rep.method = "iterative";
	rep.throughput_before_bps = objective(s, baseline);

	std::optional<OptimizeOutcome> prev;
	std::set<CellId> prev_subset;
	for (int k = 0;; ++k)
	{
		const double r = sched.radius(k);
		const bool capped = r >= sched.max_radius;
		std::set<CellId> subset = cells_within(sched.center, r, s);
		if (prev && subset == prev_subset)
		{
			if (capped)
				break;
			continue;
		}

		OptimizeOutcome out = local_reconfigure(s, subset, baseline, ga);
		rep.steps.push_back({r, subset.size(), out.best_objective});

		bool done = capped;
		if (prev)
		{
			const double delta = std::abs(out.best_objective - prev->best_objective);
			done = done || out.best_assignment == prev->best_assignment
			       || delta < iterative_convergence_tolerance * std::abs(prev->best_objective);
		}
		prev = std::move(out);
		prev_subset = std::move(subset);
		if (done)
			break;
	}

	rep.selected = prev_subset;
	rep.assignment = prev->best_assignment;
	rep.throughput_after_bps = prev->best_objective;
	rep.changed = changed_cells(baseline, rep.assignment);
	rep.changed_count = static_cast<int>(rep.changed.size());
	return rep;
}

struct SamplingConfig
{
	int samples_per_cell = 50;
	double sinr_drop_threshold_db = 2.0;
	std::uint64_t seed = 0;
	std::optional<double> range_cap_m; // unset: estimated inter-site distance

	void validate() const
	{
		if (samples_per_cell < 1)
			throw std::invalid_argument("sampling: samples_per_cell must be >= 1");
		if (!(sinr_drop_threshold_db >= 0.0))
			throw std::invalid_argument("sampling: threshold must be >= 0");
	}
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

} // namespace detail

/// Per-cell generator seed; depends only on (seed, cell id).
inline std::uint64_t cell_seed(std::uint64_t seed, CellId id)
{
	return detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(id)));
}

/**
 * Uniform points in the sector wedge of \a cell: radius up to \a range,
 * angle within the beamwidth around the azimuth.
 */
inline std::vector<Position> sample_sector(const Cell& cell, double range, double beamwidth_deg, int count,
                                           std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	std::vector<Position> pts;
	pts.reserve(static_cast<std::size_t>(count));
	for (int i = 0; i < count; ++i)
	{
		const double r = range * std::sqrt(unit(rng));
		const double a = deg_to_rad(cell.azimuth_deg + (unit(rng) - 0.5) * beamwidth_deg);
		pts.push_back({cell.site.x + r * std::cos(a), cell.site.y + r * std::sin(a)});
	}
	return pts;
}

/// Mean SINR (dB) per pre-existing cell, before and after a topology change.
struct SinrShift
{
	double before_db = 0.0;
	double after_db = 0.0;

	double drop_db() const { return before_db - after_db; }
};

inline std::map<CellId, SinrShift> sampled_sinr_shift(const Scenario& s_before,
                                                      const Scenario& s_after,
                                                      const PowerAssignment& a_before,
                                                      const PowerAssignment& a_after,
                                                      const SamplingConfig& cfg)
{
	cfg.validate();
	s_before.check_assignment(a_before);
	s_after.check_assignment(a_after);
	const double cap = cfg.range_cap_m.value_or(estimate_isd(s_before));

	std::map<CellId, SinrShift> out;
	for (const Cell& c : s_before.cells)
	{
		const double range = std::min(noise_reach_radius(a_before.at(c.id), s_before.radio), cap);
		const auto pts = sample_sector(c, range, s_before.radio.antenna_beamwidth_deg, cfg.samples_per_cell,
		                               cell_seed(cfg.seed, c.id));
		SinrShift sh;
		for (const Position& p : pts)
		{
			sh.before_db += radio::sinr_db(p, c.id, a_before, s_before.cells, s_before.radio);
			sh.after_db += radio::sinr_db(p, c.id, a_after, s_after.cells, s_after.radio);
		}
		sh.before_db /= static_cast<double>(pts.size());
		sh.after_db /= static_cast<double>(pts.size());
		out[c.id] = sh;
	}
	return out;
}

/// Pre-existing cells whose sampled mean SINR drops by more than the threshold.
inline std::set<CellId> sampling_select(const Scenario& s_before,
                                        const Scenario& s_after,
                                        const PowerAssignment& a_before,
                                        const PowerAssignment& a_after,
                                        const SamplingConfig& cfg)
{
	std::set<CellId> out;
	for (const auto& [id, sh] : sampled_sinr_shift(s_before, s_after, a_before, a_after, cfg))
		if (sh.drop_db() > cfg.sinr_drop_threshold_db)
			out.insert(id);
	return out;
}

/// Reoptimizes the sampled selection together with the newly added cells.
inline ReconfigReport sampling_reconfigure(const Scenario& s_after,
                                           const std::set<CellId>& selected,
                                           const std::vector<CellId>& new_cells,
                                           const PowerAssignment& baseline,
                                           const GaConfig& ga)
{
	ReconfigReport rep;
	rep.method = "sampling";
	rep.selected = selected;
	rep.selected.insert(new_cells.begin(), new_cells.end());

	const OptimizeOutcome out = local_reconfigure(s_after, rep.selected, baseline, ga);
	rep.throughput_before_bps = objective(s_after, baseline);
	rep.throughput_after_bps = out.best_objective;
	rep.assignment = out.best_assignment;
	rep.changed = changed_cells(baseline, rep.assignment);
	rep.changed_count = static_cast<int>(rep.changed.size());
	return rep;
}

} // namespace txp

#endif // TXP_NEIGHBORHOOD_HPP
