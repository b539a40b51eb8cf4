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

#ifndef TXP_SGA_HPP
#define TXP_SGA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace txp {

/**
 * Simple genetic algorithm settings.
 *
 * Defaults: tournament selection of size 2, single-point crossover at 0.9,
 * per-gene mutation at 1/genome-length, one elite, population 32 and 100
 * generations.
 */
struct GaConfig
{
	int population_size = 32;
	int generations = 100;
	double crossover_rate = 0.9;
	std::optional<double> mutation_rate; // per gene; unset means 1 / genome length
	int tournament_size = 2;
	int elitism_count = 1;
	std::uint64_t seed = 0;

	friend bool operator==(const GaConfig&, const GaConfig&) = default;

	void validate() const
	{
		if (population_size < 2)
			throw std::invalid_argument("ga: population_size must be >= 2");
		if (generations < 1)
			throw std::invalid_argument("ga: generations must be >= 1");
		if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
			throw std::invalid_argument("ga: crossover_rate must be in [0, 1]");
		if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0))
			throw std::invalid_argument("ga: mutation_rate must be in [0, 1]");
		if (tournament_size < 1)
			throw std::invalid_argument("ga: tournament_size must be >= 1");
		if (elitism_count < 0 || elitism_count >= population_size)
			throw std::invalid_argument("ga: elitism_count must be in [0, population_size)");
	}
};

using Genome = std::vector<std::size_t>;

struct GaResult
{
	Genome best;
	double best_fitness = 0.0;
	std::vector<double> trace; // best of the initial population, then of every generation
	std::size_t evaluations = 0;
};

/**
 * Maximizes \a fitness over genomes of \a genome_length genes, each gene a
 * level index in [0, levels). The initial population holds \a seed_genome
 * followed by uniformly random genomes. All random draws come from one
 * generator in a fixed order, and each distinct genome is evaluated once.
 */
template <class Fitness>
GaResult run_sga(std::size_t genome_length, std::size_t levels, const Genome& seed_genome, Fitness&& fitness,
                 const GaConfig& cfg)
{
	cfg.validate();
	if (seed_genome.size() != genome_length)
		throw std::invalid_argument("seed genome length mismatch");
	if (levels == 0)
		throw std::invalid_argument("gene domain is empty");

	std::mt19937_64 rng(cfg.seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	std::uniform_int_distribution<std::size_t> level_draw(0, levels - 1);

	const std::size_t n = static_cast<std::size_t>(cfg.population_size);
	const double mutation = cfg.mutation_rate.value_or(genome_length > 0 ? 1.0 / genome_length : 0.0);

	std::map<Genome, double> cache;
	GaResult result;
	auto eval = [&](const Genome& g) {
		auto it = cache.find(g);
		if (it != cache.end())
			return it->second;
		const double f = fitness(std::span<const std::size_t>(g));
		++result.evaluations;
		cache.emplace(g, f);
		return f;
	};

	std::vector<Genome> pop;
	pop.reserve(n);
	pop.push_back(seed_genome);
	while (pop.size() < n)
	{
		Genome g(genome_length);
		for (auto& gene : g)
			gene = level_draw(rng);
		pop.push_back(std::move(g));
	}
	std::vector<double> fit(n);
	for (std::size_t i = 0; i < n; ++i)
		fit[i] = eval(pop[i]);

	auto best_index = [&] {
		return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
	};
	result.trace.push_back(fit[best_index()]);

	std::uniform_int_distribution<std::size_t> pick(0, n - 1);
	auto tournament = [&] {
		std::size_t winner = pick(rng);
		for (int k = 1; k < cfg.tournament_size; ++k)
		{
			const std::size_t c = pick(rng);
			if (fit[c] > fit[winner] || (fit[c] == fit[winner] && c < winner))
				winner = c;
		}
		return winner;
	};
	auto mutate = [&](Genome& g) {
		if (levels < 2)
			return;
		std::uniform_int_distribution<std::size_t> other(0, levels - 2);
		for (auto& gene : g)
			if (unit(rng) < mutation)
			{
				const std::size_t v = other(rng);
				gene = v >= gene ? v + 1 : v;
			}
	};

	std::vector<std::size_t> order(n);
	for (int gen = 0; gen < cfg.generations; ++gen)
	{
		std::iota(order.begin(), order.end(), 0);
		std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });

		std::vector<Genome> next;
		next.reserve(n);
		for (int e = 0; e < cfg.elitism_count; ++e)
			next.push_back(pop[order[static_cast<std::size_t>(e)]]);

		while (next.size() < n)
		{
			Genome a = pop[tournament()];
			Genome b = pop[tournament()];
			if (genome_length > 1 && unit(rng) < cfg.crossover_rate)
			{
				std::uniform_int_distribution<std::size_t> cut_draw(1, genome_length - 1);
				const std::size_t cut = cut_draw(rng);
				std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(cut), a.end(),
				                 b.begin() + static_cast<std::ptrdiff_t>(cut));
			}
			mutate(a);
			mutate(b);
			next.push_back(std::move(a));
			if (next.size() < n)
				next.push_back(std::move(b));
		}

		pop = std::move(next);
		for (std::size_t i = 0; i < n; ++i)
			fit[i] = eval(pop[i]);
		result.trace.push_back(fit[best_index()]);
	}

	const std::size_t b = best_index();
	result.best = pop[b];
	result.best_fitness = fit[b];
	return result;
}

} // namespace txp

#endif // TXP_SGA_HPP
