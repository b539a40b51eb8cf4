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

#ifndef TXP_TOOLS_CLI_HPP
#define TXP_TOOLS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <txp/txp.hpp>

namespace txp::cli {

enum ExitCode : int { ok = 0, usage_error = 1, runtime_failure = 2 };

/// Invalid combination of otherwise well-formed arguments.
struct UsageError : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open " + p.string());
	std::stringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
	if (path.empty() || path == "-")
	{
		out << text;
		return;
	}
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw std::runtime_error("cannot write " + path);
	f << text;
}

inline nlohmann::json evaluation_to_json(const EvaluationResult& r)
{
	nlohmann::json cells = nlohmann::json::array();
	for (const auto& [id, n] : r.cell_ue_count)
		cells.push_back({{"id", id}, {"ue_count", n}});
	nlohmann::json ues = nlohmann::json::array();
	for (const UeRecord& u : r.ues)
		ues.push_back({{"id", u.ue}, {"serving_cell", u.serving_cell}, {"sinr_db", u.sinr_db}, {"cqi", u.cqi},
		               {"throughput_bps", u.throughput_bps}});
	return {{"total_throughput_bps", r.total_throughput_bps}, {"cells", cells}, {"ues", ues}};
}

inline nlohmann::json outcome_to_json(const OptimizeOutcome& o, const PowerAssignment& init)
{
	return {{"best_objective_bps", o.best_objective},
	        {"initial_objective_bps", o.objective_trace.empty() ? 0.0 : o.objective_trace.front()},
	        {"evaluations", o.evaluations},
	        {"changed_count", count_changed(init, o.best_assignment)},
	        {"objective_trace", o.objective_trace},
	        {"powers", powers_to_json(o.best_assignment)}};
}

inline std::set<CellId> parse_cell_list(const std::string& text)
{
	std::set<CellId> out;
	if (text.empty())
		return out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		std::size_t pos = 0;
		CellId id = 0;
		try
		{
			id = std::stoll(item, &pos);
		}
		catch (const std::exception&)
		{
			pos = 0;
		}
		if (pos == 0 || pos != item.size())
			throw UsageError("--cells: '" + item + "' is not a cell id");
		out.insert(id);
	}
	return out;
}

/// Parses "NXxNY".
inline std::pair<int, int> parse_grid(const std::string& text)
{
	static const std::regex re(R"((\d+)[xX](\d+))");
	std::smatch m;
	if (!std::regex_match(text, m, re))
		throw UsageError("--ue-grid expects NXxNY, got '" + text + "'");
	return {std::stoi(m[1]), std::stoi(m[2])};
}

/**
 * Entry point shared by the executable and the tests. Returns 0 on success,
 * 1 on usage errors and 2 on runtime failures.
 */
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
	CLI::App app{"Downlink TX power planning for networks with nomadic base stations"};
	app.require_subcommand(1);

	// generate
	int sites = 12;
	double isd = default_isd_m;
	std::string ue_grid = "18x18";
	std::string gen_out;
	auto* gen = app.add_subcommand("generate", "Write a honeycomb topology document");
	gen->add_option("--sites", sites, "Number of three-sector sites")->check(CLI::PositiveNumber);
	gen->add_option("--isd", isd, "Inter-site distance in meters")->check(CLI::PositiveNumber);
	gen->add_option("--ue-grid", ue_grid, "UE grid as NXxNY");
	gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

	// evaluate
	std::string topo;
	std::string powers_file;
	std::string eval_out;
	auto* ev = app.add_subcommand("evaluate", "Evaluate a power assignment");
	ev->add_option("--topology", topo, "Topology document")->required();
	ev->add_option("--powers", powers_file, "Power file {\"<cell id>\": dBm}; default powers otherwise");
	ev->add_option("-o,--output", eval_out, "Output file (default stdout)");

	// optimize
	std::string method = "global";
	std::string cells_arg;
	std::uint64_t seed = 1;
	int generations = 100;
	int population = 32;
	std::string opt_out;
	auto* opt = app.add_subcommand("optimize", "Optimize TX powers with the genetic algorithm");
	opt->add_option("--topology", topo, "Topology document")->required();
	opt->add_option("--method", method, "global or local")->check(CLI::IsMember({"global", "local"}));
	opt->add_option("--cells", cells_arg, "Comma-separated cell ids free to change (local)");
	opt->add_option("--powers", powers_file, "Initial power file; default powers otherwise");
	opt->add_option("--seed", seed, "Random seed");
	opt->add_option("--generations", generations, "SGA generations")->check(CLI::PositiveNumber);
	opt->add_option("--population", population, "SGA population size")->check(CLI::Range(2, 1 << 20));
	opt->add_option("-o,--output", opt_out, "Output file (default stdout)");

	// experiment
	std::string spec_file;
	std::string exp_dir;
	auto* ex = app.add_subcommand("experiment", "Run a batch experiment");
	ex->add_option("--spec", spec_file, "Experiment spec JSON")->required();
	ex->add_option("-o,--output", exp_dir, "Output directory")->required();

	// compare
	std::string first_csv, second_csv, cmp_out;
	auto* cmp = app.add_subcommand("compare", "Paired differences between two records.csv files");
	cmp->add_option("first", first_csv, "Baseline records.csv")->required();
	cmp->add_option("second", second_csv, "Records to compare against the baseline")->required();
	cmp->add_option("-o,--output", cmp_out, "Output file (default stdout)");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		const int code = app.exit(e, out, err);
		return code == 0 ? ExitCode::ok : ExitCode::usage_error;
	}

	try
	{
		auto load_scenario = [&] { return load_topology(read_file(topo)); };
		auto load_powers = [&](const Scenario& s) {
			if (powers_file.empty())
				return s.default_assignment();
			PowerAssignment a = powers_from_json(nlohmann::json::parse(read_file(powers_file)));
			s.check_assignment(a);
			return a;
		};

		if (gen->parsed())
		{
			const auto [nx, ny] = parse_grid(ue_grid);
			Scenario s = generate_honeycomb(sites, isd);
			s.ues = generate_ue_grid(nx, ny, s.area);
			write_output(gen_out, save_topology(s), out);
		}
		else if (ev->parsed())
		{
			const Scenario s = load_scenario();
			write_output(eval_out, evaluation_to_json(evaluate(s, load_powers(s))).dump(2) + "\n", out);
		}
		else if (opt->parsed())
		{
			if (method == "local" && cells_arg.empty())
				throw UsageError("--method local needs --cells");
			const std::set<CellId> free = method == "global" ? std::set<CellId>{} : parse_cell_list(cells_arg);
			const Scenario s = load_scenario();
			const PowerAssignment init = load_powers(s);
			GaConfig ga;
			ga.seed = seed;
			ga.generations = generations;
			ga.population_size = population;
			const OptimizeOutcome o = local_reconfigure(s, method == "global" ? s.cell_ids() : free, init, ga);
			write_output(opt_out, outcome_to_json(o, init).dump(2) + "\n", out);
		}
		else if (ex->parsed())
		{
			const std::filesystem::path sp = spec_file;
			const ExperimentSpec spec =
				experiment_spec_from_json(nlohmann::json::parse(read_file(sp)), sp.parent_path());
			const auto records = run_experiment(spec);
			write_experiment_outputs(records, spec, exp_dir);
			out << export_boxplots(records, spec.methods, [](const RunRecord& r) {
				return std::optional<double>(r.changed_count);
			});
		}
		else if (cmp->parsed())
		{
			const auto a = read_records_csv(read_file(first_csv));
			const auto b = read_records_csv(read_file(second_csv));
			write_output(cmp_out, export_paired_summary(compare_records(a, b)), out);
		}
	}
	catch (const UsageError& e)
	{
		err << "usage error: " << e.what() << "\n";
		return ExitCode::usage_error;
	}
	catch (const std::exception& e)
	{
		err << "error: " << e.what() << "\n";
		return ExitCode::runtime_failure;
	}
	return ExitCode::ok;
}

} // namespace txp::cli

#endif // TXP_TOOLS_CLI_HPP
