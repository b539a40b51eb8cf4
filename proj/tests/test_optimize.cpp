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

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <txp/optimize.hpp>
#include <txp/topology.hpp>

#include "test_util.hpp"

using namespace txp;
using txp::testing::brute_force_throughput;
using txp::testing::enumerate_assignments;
using txp::testing::make_scenario;

namespace {

// Two facing cells 1.5 km apart with UEs spread between them.
Scenario facing_pair(PowerDomain dom)
{
	std::vector<Ue> ues;
	for (int i = 0; i < 10; ++i)
		ues.push_back({i, {1100.0 + 130.0 * i, 1000.0 + 40.0 * (i % 3)}});
	return make_scenario({{0, {1000, 1000}, 0.0, dom.min_dbm}, {1, {2500, 1000}, 180.0, dom.min_dbm}}, ues, dom);
}

double exhaustive_best(const Scenario& s, const std::vector<CellId>& free, const PowerAssignment& base)
{
	const LinkMatrix links(s);
	double best = 0.0;
	for (const auto& a : enumerate_assignments(s, free, base))
		best = std::max(best, links.evaluate(a).total_throughput_bps);
	return best;
}

GaConfig small_ga(std::uint64_t seed)
{
	GaConfig g;
	g.population_size = 16;
	g.generations = 50;
	g.seed = seed;
	return g;
}

} // namespace

TEST(Objective, EqualsEvaluateTotal)
{
	Scenario s = generate_honeycomb(3, 1200.0);
	s.ues = generate_ue_grid(8, 8, s.area);
	const PowerAssignment a = s.default_assignment();
	EXPECT_EQ(objective(s, a), evaluate(s, a).total_throughput_bps);
}

TEST(Objective, EmptyUeSetIsZero)
{
	const Scenario s = generate_honeycomb(2, 1000.0);
	EXPECT_EQ(objective(s, s.default_assignment()), 0.0);
}

TEST(Objective, TwoCellTwoLevelToyMatchesHandEvaluation)
{
	const Scenario s = facing_pair({20.0, 40.0, 20.0});
	const auto all = enumerate_assignments(s, {0, 1}, s.default_assignment());
	ASSERT_EQ(all.size(), 4u);
	for (const auto& a : all)
		EXPECT_NEAR(objective(s, a), brute_force_throughput(s, a), 1e-6 * brute_force_throughput(s, a));
}

TEST(Sga, EmptyFreeSetReturnsInit)
{
	const Scenario s = facing_pair({20.0, 44.0, 8.0});
	PowerAssignment init = s.default_assignment();
	init.set(1, 36.0);
	const OptimizeOutcome o = sga_optimize(s, {}, init, small_ga(1));
	EXPECT_EQ(o.best_assignment, init);
	EXPECT_EQ(o.best_objective, objective(s, init));
}

TEST(Sga, FindsExhaustiveOptimumOnSixteenCombinations)
{
	const Scenario s = facing_pair({20.0, 44.0, 8.0}); // 4 levels
	ASSERT_EQ(s.power_domain.level_count(), 4u);
	const double best = exhaustive_best(s, {0, 1}, s.default_assignment());
	for (std::uint64_t seed = 1; seed <= 5; ++seed)
	{
		const OptimizeOutcome o = sga_optimize(s, {0, 1}, s.default_assignment(), small_ga(seed));
		EXPECT_NEAR(o.best_objective, best, 1e-6) << "seed " << seed;
	}
}

TEST(Sga, SameSeedSameOutcome)
{
	Scenario s = generate_honeycomb(4, 1500.0);
	s.ues = generate_ue_grid(9, 9, s.area);
	GaConfig g;
	g.generations = 20;
	g.seed = 42;
	const auto a = sga_optimize(s, s.cell_ids(), s.default_assignment(), g);
	const auto b = sga_optimize(s, s.cell_ids(), s.default_assignment(), g);
	EXPECT_EQ(a, b);
	g.seed = 43;
	EXPECT_NE(sga_optimize(s, s.cell_ids(), s.default_assignment(), g).objective_trace, a.objective_trace);
}

TEST(Sga, TraceIsNonDecreasingAndEndsAtBest)
{
	Scenario s = generate_honeycomb(4, 1500.0);
	s.ues = generate_ue_grid(9, 9, s.area);
	GaConfig g;
	g.generations = 30;
	g.seed = 7;
	const auto o = sga_optimize(s, s.cell_ids(), s.default_assignment(), g);
	ASSERT_EQ(o.objective_trace.size(), 31u);
	EXPECT_TRUE(std::is_sorted(o.objective_trace.begin(), o.objective_trace.end()));
	EXPECT_EQ(o.best_objective, o.objective_trace.back());
	EXPECT_EQ(o.best_objective, objective(s, o.best_assignment));
	EXPECT_GE(o.best_objective, objective(s, s.default_assignment()));
	EXPECT_GT(o.evaluations, 0u);
}

TEST(Sga, RejectsUnknownFreeCellAndBadConfig)
{
	const Scenario s = facing_pair({20.0, 44.0, 8.0});
	EXPECT_THROW(sga_optimize(s, {9}, s.default_assignment(), small_ga(1)), std::invalid_argument);
	GaConfig g = small_ga(1);
	g.population_size = 1;
	EXPECT_THROW(sga_optimize(s, {0}, s.default_assignment(), g), std::invalid_argument);
	g = small_ga(1);
	g.crossover_rate = 1.5;
	EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(Global, SingleCellPicksBestLevel)
{
	std::vector<Ue> ues;
	for (int i = 0; i < 6; ++i)
		ues.push_back({i, {1500.0 + 600.0 * i, 1000.0}});
	const Scenario s = make_scenario({{0, {1000, 1000}, 0.0, 10.0}}, ues);
	double best = 0.0;
	for (std::size_t k = 0; k < s.power_domain.level_count(); ++k)
		best = std::max(best, objective(s, PowerAssignment({{0, s.power_domain.level(k)}})));
	const OptimizeOutcome o = global_reconfigure(s, small_ga(3));
	EXPECT_EQ(o.best_objective, best);
}

TEST(Global, NeverWorseThanDefaults)
{
	Scenario s = generate_honeycomb(3, 1000.0);
	s.ues = generate_ue_grid(7, 7, s.area);
	for (std::uint64_t seed = 1; seed <= 3; ++seed)
	{
		GaConfig g;
		g.generations = 5;
		g.seed = seed;
		EXPECT_GE(global_reconfigure(s, g).best_objective, objective(s, s.default_assignment()));
	}
}

TEST(Global, ThreeCellToyWithinOnePercentOfExhaustive)
{
	std::vector<Ue> ues = generate_ue_grid(6, 6, {4000.0, 4000.0});
	const Scenario s = make_scenario(
		{{0, {1000, 1000}, 30.0, 44.0}, {1, {3000, 1200}, 150.0, 44.0}, {2, {2000, 3000}, 270.0, 44.0}}, ues, {},
		{4000.0, 4000.0});
	ASSERT_EQ(s.power_domain.level_count(), 19u);
	const double best = exhaustive_best(s, {0, 1, 2}, s.default_assignment());
	GaConfig g;
	g.seed = 17;
	const OptimizeOutcome o = global_reconfigure(s, g);
	EXPECT_GE(o.best_objective, 0.99 * best);
	EXPECT_LE(o.best_objective, best + 1e-6);
}

TEST(Local, EmptySubsetReturnsBaseline)
{
	const Scenario s = facing_pair({20.0, 44.0, 8.0});
	PowerAssignment base = s.default_assignment();
	base.set(0, 44.0);
	EXPECT_EQ(local_reconfigure(s, {}, base, small_ga(1)).best_assignment, base);
}

TEST(Local, FullSubsetMatchesGlobal)
{
	Scenario s = generate_honeycomb(2, 1200.0);
	s.ues = generate_ue_grid(6, 6, s.area);
	GaConfig g;
	g.generations = 15;
	g.seed = 9;
	EXPECT_EQ(local_reconfigure(s, s.cell_ids(), s.default_assignment(), g), global_reconfigure(s, g));
}

TEST(Local, NonSubsetCellsKeepBaselineOnRandomToys)
{
	std::mt19937_64 rng(21);
	for (int trial = 0; trial < 20; ++trial)
	{
		const Scenario s = txp::testing::random_toy(rng, 5, 4);
		PowerAssignment base = s.default_assignment();
		std::set<CellId> subset;
		for (const Cell& c : s.cells)
			if (rng() % 2)
				subset.insert(c.id);
		int bad = 0;
		const auto o = local_reconfigure(s, subset, base, small_ga(trial), [&](const PowerAssignment& cand) {
			for (const Cell& c : s.cells)
				if (!subset.contains(c.id) && cand.at(c.id) != base.at(c.id))
					++bad;
		});
		EXPECT_EQ(bad, 0);
		for (const Cell& c : s.cells)
			if (!subset.contains(c.id))
			{
				EXPECT_EQ(o.best_assignment.at(c.id), base.at(c.id));
			}
	}
}

TEST(CountChanged, Basics)
{
	const PowerAssignment a({{0, 40.0}, {1, 40.0}, {2, 40.0}, {3, 40.0}});
	EXPECT_EQ(count_changed(a, a), 0);
	PowerAssignment b = a;
	b.set(1, 42.0);
	EXPECT_EQ(count_changed(a, b), 1);
	PowerAssignment c = b;
	c.set(3, 10.0);
	EXPECT_EQ(count_changed(a, c), count_changed(a, b) + count_changed(b, c));
	EXPECT_EQ(changed_cells(a, c), (std::set<CellId>{1, 3}));
	EXPECT_THROW(count_changed(a, PowerAssignment({{0, 40.0}})), std::invalid_argument);
	EXPECT_THROW(count_changed(a, PowerAssignment({{0, 40.0}, {1, 40.0}, {2, 40.0}, {9, 40.0}})), std::invalid_argument);
}
