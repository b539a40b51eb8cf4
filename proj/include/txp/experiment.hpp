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

#ifndef TXP_EXPERIMENT_HPP
#define TXP_EXPERIMENT_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include <txp/neighborhood.hpp>
#include <txp/optimize.hpp>
#include <txp/stats.hpp>
#include <txp/topology.hpp>
#include <txp/topology_io.hpp>

namespace txp {

inline const std::vector<std::string>& known_methods()
{
	static const std::vector<std::string> m{"global", "iterative", "sampling"};
	return m;
}

struct GeneratorParams
{
	int sites = 12;
	double isd_m = default_isd_m;
	int ue_nx = 18;
	int ue_ny = 18;
};

struct CircleParams
{
	std::optional<double> initial_radius_m; // unset: default_circle_schedule
	double growth_factor = 1.5;
	std::optional<double> max_radius_m;     // unset: area diagonal
};

struct ExperimentSpec
{
	std::optional<GeneratorParams> generator;
	std::optional<std::filesystem::path> topology_file;
	std::optional<Position> nomadic_site; // unset: area center
	std::vector<std::string> methods{"global", "iterative", "sampling"};
	int repetitions = 50;
	std::uint64_t base_seed = 1;
	GaConfig ga;
	CircleParams circle;
	SamplingConfig sampling;
	bool record_wall_time = false;

	void validate() const
	{
		if (repetitions < 1)
			throw std::invalid_argument("experiment: repetitions must be >= 1");
		if (methods.empty())
			throw std::invalid_argument("experiment: at least one method is required");
		for (const auto& m : methods)
			if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
				throw std::invalid_argument("experiment: unknown method '" + m + "'");
		if (generator.has_value() == topology_file.has_value())
			throw std::invalid_argument("experiment: give exactly one of scenario generator or topology file");
		ga.validate();
		sampling.validate();
	}
};

struct RunRecord
{
	std::string method;
	std::uint64_t seed = 0;
	int changed_count = 0;
	int selected_count = 0;
	double total_throughput_bps = 0.0;
	std::optional<double> rel_to_global; // unset when no global run exists for the seed
	double wall_ms = 0.0;
	std::string status = "ok";

	friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Reference network: generated honeycomb or a loaded topology file.
inline Scenario build_reference(const ExperimentSpec& spec)
{
	if (spec.generator)
	{
		const GeneratorParams& g = *spec.generator;
		Scenario s = generate_honeycomb(g.sites, g.isd_m);
		s.ues = generate_ue_grid(g.ue_nx, g.ue_ny, s.area);
		return s;
	}
	std::ifstream in(*spec.topology_file, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open topology file " + spec.topology_file->string());
	std::stringstream buf;
	buf << in.rdbuf();
	return load_topology(buf.str());
}

namespace detail {

inline RunRecord record_from(const std::string& method, std::uint64_t seed, const ReconfigReport& rep)
{
	RunRecord r;
	r.method = method;
	r.seed = seed;
	r.changed_count = rep.changed_count;
	r.selected_count = static_cast<int>(rep.selected.size());
	r.total_throughput_bps = rep.throughput_after_bps;
	return r;
}

} // namespace detail

/**
 * One repetition per seed base_seed + r: optimize the reference network
 * globally, add the nomadic site, then run every requested method from the
 * same reference assignment. Records are ordered by (method, seed).
 */
inline std::vector<RunRecord> run_experiment(const ExperimentSpec& spec)
{
	spec.validate();
	const Scenario before = build_reference(spec);
	const Position site = spec.nomadic_site.value_or(before.area.center());
	const Scenario after = add_nomadic_site(before, site);
	const std::vector<CellId> new_cells = added_cells(before, after);
	const std::set<CellId> all_after = after.cell_ids();

	CircleSchedule sched = default_circle_schedule(after, site);
	if (spec.circle.max_radius_m)
		sched.max_radius = *spec.circle.max_radius_m;
	if (spec.circle.initial_radius_m)
		sched.initial_radius = *spec.circle.initial_radius_m;
	sched.initial_radius = std::min(sched.initial_radius, sched.max_radius);
	sched.growth_factor = spec.circle.growth_factor;

	std::vector<RunRecord> records;
	for (int rep = 0; rep < spec.repetitions; ++rep)
	{
		const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(rep);
		GaConfig ga = spec.ga;
		ga.seed = seed;

		std::vector<RunRecord> rows;
		std::optional<PowerAssignment> baseline;
		PowerAssignment reference;
		std::string setup_error;
		try
		{
			reference = global_reconfigure(before, ga).best_assignment;
			PowerAssignment b = reference;
			for (CellId id : new_cells)
				b.set(id, after.cell(id).default_tx_power_dbm);
			baseline = std::move(b);
		}
		catch (const std::exception& e)
		{
			setup_error = e.what();
		}

		for (const std::string& method : spec.methods)
		{
			const auto t0 = std::chrono::steady_clock::now();
			RunRecord row;
			try
			{
				if (!baseline)
					throw std::runtime_error("reference optimization failed: " + setup_error);
				if (method == "global")
				{
					const OptimizeOutcome out = local_reconfigure(after, all_after, *baseline, ga);
					ReconfigReport r;
					r.selected = all_after;
					r.changed_count = count_changed(*baseline, out.best_assignment);
					r.throughput_after_bps = out.best_objective;
					row = detail::record_from(method, seed, r);
				}
				else if (method == "iterative")
				{
					row = detail::record_from(method, seed, iterative_range_reconfigure(after, sched, ga, *baseline));
				}
				else
				{
					SamplingConfig sc = spec.sampling;
					sc.seed = seed;
					const auto selected = sampling_select(before, after, reference, *baseline, sc);
					row = detail::record_from(method, seed,
					                          sampling_reconfigure(after, selected, new_cells, *baseline, ga));
				}
			}
			catch (const std::exception& e)
			{
				row = RunRecord{};
				row.method = method;
				row.seed = seed;
				row.status = std::string("failed: ") + e.what();
			}
			const auto t1 = std::chrono::steady_clock::now();
			row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
			rows.push_back(std::move(row));
		}

		auto global = std::find_if(rows.begin(), rows.end(),
		                           [](const RunRecord& r) { return r.method == "global" && r.status == "ok"; });
		if (global != rows.end() && global->total_throughput_bps > 0.0)
			for (RunRecord& r : rows)
				if (r.status == "ok")
					r.rel_to_global = r.total_throughput_bps / global->total_throughput_bps;
		records.insert(records.end(), rows.begin(), rows.end());
	}

	std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
		return a.method != b.method ? a.method < b.method : a.seed < b.seed;
	});
	return records;
}

/// Shortest round-trip decimal form, always with '.' as separator.
inline std::string format_number(double v)
{
	char buf[64];
	const auto res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

inline constexpr std::string_view records_csv_header =
	"method,seed,changed_count,selected_count,total_throughput_bps,rel_to_global,wall_ms,status";

enum class ExportFormat { csv, json };

inline ExportFormat parse_export_format(std::string_view name)
{
	if (name == "csv")
		return ExportFormat::csv;
	if (name == "json")
		return ExportFormat::json;
	throw std::invalid_argument("unknown export format '" + std::string(name) + "'");
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s)
	{
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

} // namespace detail

/**
 * Serializes run records. When \a include_wall_time is false the wall_ms
 * column is written as 0 so that identical specs give identical bytes.
 */
inline std::string export_results(const std::vector<RunRecord>& records, ExportFormat format,
                                  bool include_wall_time = true)
{
	if (format == ExportFormat::csv)
	{
		std::string out(records_csv_header);
		out += '\n';
		for (const RunRecord& r : records)
		{
			out += detail::csv_field(r.method) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.changed_count) + ','
			       + std::to_string(r.selected_count) + ',' + format_number(r.total_throughput_bps) + ','
			       + (r.rel_to_global ? format_number(*r.rel_to_global) : std::string()) + ','
			       + format_number(include_wall_time ? r.wall_ms : 0.0) + ',' + detail::csv_field(r.status) + '\n';
		}
		return out;
	}

	nlohmann::json arr = nlohmann::json::array();
	for (const RunRecord& r : records)
	{
		arr.push_back({
			{"method", r.method},
			{"seed", r.seed},
			{"changed_count", r.changed_count},
			{"selected_count", r.selected_count},
			{"total_throughput_bps", r.total_throughput_bps},
			{"rel_to_global", r.rel_to_global ? nlohmann::json(*r.rel_to_global) : nlohmann::json(nullptr)},
			{"wall_ms", include_wall_time ? r.wall_ms : 0.0},
			{"status", r.status},
		});
	}
	return arr.dump(2) + "\n";
}

inline std::string export_results(const std::vector<RunRecord>& records, std::string_view format,
                                  bool include_wall_time = true)
{
	return export_results(records, parse_export_format(format), include_wall_time);
}

inline std::vector<RunRecord> records_from_json(const nlohmann::json& arr)
{
	if (!arr.is_array())
		throw ParseError("<root>", "expected an array of records");
	std::vector<RunRecord> out;
	for (const auto& j : arr)
	{
		RunRecord r;
		r.method = j.at("method").get<std::string>();
		r.seed = j.at("seed").get<std::uint64_t>();
		r.changed_count = j.at("changed_count").get<int>();
		r.selected_count = j.at("selected_count").get<int>();
		r.total_throughput_bps = j.at("total_throughput_bps").get<double>();
		if (!j.at("rel_to_global").is_null())
			r.rel_to_global = j.at("rel_to_global").get<double>();
		r.wall_ms = j.at("wall_ms").get<double>();
		r.status = j.at("status").get<std::string>();
		out.push_back(std::move(r));
	}
	return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line)
{
	std::vector<std::string> out;
	std::string cur;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i)
	{
		const char c = line[i];
		if (quoted)
		{
			if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
			{
				cur += '"';
				++i;
			}
			else if (c == '"')
				quoted = false;
			else
				cur += c;
		}
		else if (c == '"')
			quoted = true;
		else if (c == ',')
			out.push_back(std::exchange(cur, {}));
		else
			cur += c;
	}
	out.push_back(cur);
	return out;
}

template <class T>
T parse_num(const std::string& s, const std::string& what)
{
	T v{};
	const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
		throw ParseError(what, "malformed number '" + s + "'");
	return v;
}

} // namespace detail

inline std::vector<RunRecord> read_records_csv(std::string_view text)
{
	std::vector<RunRecord> out;
	std::istringstream in{std::string(text)};
	std::string line;
	if (!std::getline(in, line) || line != records_csv_header)
		throw ParseError("header", "expected '" + std::string(records_csv_header) + "'");
	for (int row = 1; std::getline(in, line); ++row)
	{
		if (line.empty())
			continue;
		const auto f = detail::split_csv_line(line);
		const std::string where = "row " + std::to_string(row);
		if (f.size() != 8)
			throw ParseError(where, "expected 8 columns");
		RunRecord r;
		r.method = f[0];
		r.seed = detail::parse_num<std::uint64_t>(f[1], where + ".seed");
		r.changed_count = detail::parse_num<int>(f[2], where + ".changed_count");
		r.selected_count = detail::parse_num<int>(f[3], where + ".selected_count");
		r.total_throughput_bps = detail::parse_num<double>(f[4], where + ".total_throughput_bps");
		if (!f[5].empty())
			r.rel_to_global = detail::parse_num<double>(f[5], where + ".rel_to_global");
		r.wall_ms = detail::parse_num<double>(f[6], where + ".wall_ms");
		r.status = f[7];
		out.push_back(std::move(r));
	}
	return out;
}

/// Records of one method with status ok.
inline std::vector<RunRecord> successful(const std::vector<RunRecord>& records, std::string_view method)
{
	std::vector<RunRecord> out;
	for (const RunRecord& r : records)
		if (r.method == method && r.status == "ok")
			out.push_back(r);
	return out;
}

/// Paired differences (second minus first) over (method, seed) keys present and ok in both sets.
struct PairedSummary
{
	std::string method;
	std::size_t pairs = 0;
	double mean_throughput_diff_bps = 0.0;
	double median_throughput_diff_bps = 0.0;
	double mean_relative_throughput_diff = 0.0;
	double mean_changed_diff = 0.0;
	double median_changed_diff = 0.0;
};

inline std::vector<PairedSummary> compare_records(const std::vector<RunRecord>& first,
                                                  const std::vector<RunRecord>& second)
{
	std::map<std::pair<std::string, std::uint64_t>, const RunRecord*> index;
	for (const RunRecord& r : first)
		if (r.status == "ok")
			index[{r.method, r.seed}] = &r;

	std::map<std::string, std::vector<std::pair<const RunRecord*, const RunRecord*>>> by_method;
	for (const RunRecord& r : second)
	{
		if (r.status != "ok")
			continue;
		auto it = index.find({r.method, r.seed});
		if (it != index.end())
			by_method[r.method].emplace_back(it->second, &r);
	}

	std::vector<PairedSummary> out;
	for (const auto& [method, pairs] : by_method)
	{
		PairedSummary s;
		s.method = method;
		s.pairs = pairs.size();
		std::vector<double> dthr, dchg;
		double rel = 0.0;
		for (const auto& [a, b] : pairs)
		{
			dthr.push_back(b->total_throughput_bps - a->total_throughput_bps);
			dchg.push_back(static_cast<double>(b->changed_count - a->changed_count));
			rel += a->total_throughput_bps > 0.0 ? dthr.back() / a->total_throughput_bps : 0.0;
		}
		const double n = static_cast<double>(pairs.size());
		for (double v : dthr)
			s.mean_throughput_diff_bps += v / n;
		for (double v : dchg)
			s.mean_changed_diff += v / n;
		s.mean_relative_throughput_diff = rel / n;
		s.median_throughput_diff_bps = stats::median(dthr);
		s.median_changed_diff = stats::median(dchg);
		out.push_back(s);
	}
	return out;
}

inline std::string export_paired_summary(const std::vector<PairedSummary>& rows)
{
	std::string out = "method,pairs,mean_throughput_diff_bps,median_throughput_diff_bps,mean_relative_throughput_diff,"
	                  "mean_changed_diff,median_changed_diff\n";
	for (const auto& s : rows)
		out += s.method + ',' + std::to_string(s.pairs) + ',' + format_number(s.mean_throughput_diff_bps) + ','
		       + format_number(s.median_throughput_diff_bps) + ',' + format_number(s.mean_relative_throughput_diff) + ','
		       + format_number(s.mean_changed_diff) + ',' + format_number(s.median_changed_diff) + '\n';
	return out;
}

inline std::string export_ecdf(const std::vector<stats::EcdfPoint>& pts)
{
	std::string out = "value,fraction\n";
	for (const auto& p : pts)
		out += format_number(p.value) + ',' + format_number(p.fraction) + '\n';
	return out;
}

/// Five-number summary per method of the value picked by \a metric.
template <class Metric>
std::string export_boxplots(const std::vector<RunRecord>& records, const std::vector<std::string>& methods,
                            Metric&& metric)
{
	std::string out = "method,min,q1,median,q3,max\n";
	for (const auto& m : methods)
	{
		std::vector<double> v;
		for (const RunRecord& r : successful(records, m))
			if (auto x = metric(r))
				v.push_back(*x);
		if (v.empty())
			continue;
		const auto b = stats::boxplot_stats(v);
		out += m + ',' + format_number(b.min) + ',' + format_number(b.q1) + ',' + format_number(b.median) + ','
		       + format_number(b.q3) + ',' + format_number(b.max) + '\n';
	}
	return out;
}

/**
 * Writes records.csv, timings.csv, ecdf_changed_<method>.csv,
 * ecdf_rel_to_global_<method>.csv and boxplot_{changed_count,throughput,rel_to_global}.csv
 * into \a dir.
 */
inline void write_experiment_outputs(const std::vector<RunRecord>& records,
                                     const ExperimentSpec& spec,
                                     const std::filesystem::path& dir)
{
	std::filesystem::create_directories(dir);
	auto write = [&](const std::string& name, const std::string& text) {
		std::ofstream out(dir / name, std::ios::binary);
		if (!out)
			throw std::runtime_error("cannot write " + (dir / name).string());
		out << text;
	};

	write("records.csv", export_results(records, ExportFormat::csv, spec.record_wall_time));

	std::string timings = "method,seed,wall_ms\n";
	for (const RunRecord& r : records)
		timings += r.method + ',' + std::to_string(r.seed) + ',' + format_number(r.wall_ms) + '\n';
	write("timings.csv", timings);

	std::vector<std::string> methods = spec.methods;
	std::sort(methods.begin(), methods.end());
	methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
	for (const auto& m : methods)
	{
		std::vector<double> changed, rel;
		for (const RunRecord& r : successful(records, m))
		{
			changed.push_back(r.changed_count);
			if (r.rel_to_global)
				rel.push_back(*r.rel_to_global);
		}
		if (!changed.empty())
			write("ecdf_changed_" + m + ".csv", export_ecdf(stats::ecdf(changed)));
		if (!rel.empty())
			write("ecdf_rel_to_global_" + m + ".csv", export_ecdf(stats::ecdf(rel)));
	}
	write("boxplot_changed_count.csv", export_boxplots(records, methods, [](const RunRecord& r) {
		      return std::optional<double>(r.changed_count);
	      }));
	write("boxplot_throughput.csv", export_boxplots(records, methods, [](const RunRecord& r) {
		      return std::optional<double>(r.total_throughput_bps);
	      }));
	write("boxplot_rel_to_global.csv",
	      export_boxplots(records, methods, [](const RunRecord& r) { return r.rel_to_global; }));
}

/**
 * Experiment spec document. Paths in "scenario.topology_file" are resolved
 * against \a base_dir.
 */
inline ExperimentSpec experiment_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {})
{
	using namespace json_detail;
	expect_object(j, "", {"scenario", "nomadic_site", "methods", "repetitions", "base_seed", "ga", "circle", "sampling",
	                      "record_wall_time"});
	ExperimentSpec spec;

	const json& sc = field(j, "", "scenario");
	expect_object(sc, "scenario", {"sites", "isd_m", "ue_grid", "topology_file"});
	if (sc.contains("topology_file"))
	{
		if (sc.contains("sites") || sc.contains("isd_m") || sc.contains("ue_grid"))
			throw ParseError("scenario", "topology_file excludes generator parameters");
		const json& tf = sc.at("topology_file");
		if (!tf.is_string())
			throw ParseError("scenario.topology_file", "expected a string");
		std::filesystem::path p = tf.get<std::string>();
		spec.topology_file = p.is_absolute() ? p : base_dir / p;
	}
	else
	{
		GeneratorParams g;
		g.sites = static_cast<int>(integer(sc, "scenario", "sites"));
		if (sc.contains("isd_m"))
			g.isd_m = number(sc, "scenario", "isd_m");
		if (sc.contains("ue_grid"))
		{
			const json& grid = sc.at("ue_grid");
			if (!grid.is_array() || grid.size() != 2 || !grid[0].is_number_integer() || !grid[1].is_number_integer())
				throw ParseError("scenario.ue_grid", "expected [nx, ny]");
			g.ue_nx = grid[0].get<int>();
			g.ue_ny = grid[1].get<int>();
		}
		spec.generator = g;
	}

	if (j.contains("nomadic_site"))
		spec.nomadic_site = position(j.at("nomadic_site"), "nomadic_site");
	if (j.contains("methods"))
	{
		const json& m = j.at("methods");
		if (!m.is_array())
			throw ParseError("methods", "expected an array");
		spec.methods.clear();
		for (const auto& e : m)
		{
			if (!e.is_string())
				throw ParseError("methods", "expected method names");
			spec.methods.push_back(e.get<std::string>());
		}
	}
	if (j.contains("repetitions"))
		spec.repetitions = static_cast<int>(integer(j, "", "repetitions"));
	if (j.contains("base_seed"))
		spec.base_seed = static_cast<std::uint64_t>(integer(j, "", "base_seed"));
	if (j.contains("record_wall_time"))
	{
		if (!j.at("record_wall_time").is_boolean())
			throw ParseError("record_wall_time", "expected a boolean");
		spec.record_wall_time = j.at("record_wall_time").get<bool>();
	}

	if (j.contains("ga"))
	{
		const json& g = j.at("ga");
		expect_object(g, "ga", {"population_size", "generations", "crossover_rate", "mutation_rate", "tournament_size",
		                        "elitism_count"});
		if (g.contains("population_size"))
			spec.ga.population_size = static_cast<int>(integer(g, "ga", "population_size"));
		if (g.contains("generations"))
			spec.ga.generations = static_cast<int>(integer(g, "ga", "generations"));
		if (g.contains("crossover_rate"))
			spec.ga.crossover_rate = number(g, "ga", "crossover_rate");
		if (g.contains("mutation_rate"))
			spec.ga.mutation_rate = number(g, "ga", "mutation_rate");
		if (g.contains("tournament_size"))
			spec.ga.tournament_size = static_cast<int>(integer(g, "ga", "tournament_size"));
		if (g.contains("elitism_count"))
			spec.ga.elitism_count = static_cast<int>(integer(g, "ga", "elitism_count"));
	}
	if (j.contains("circle"))
	{
		const json& c = j.at("circle");
		expect_object(c, "circle", {"initial_radius_m", "growth_factor", "max_radius_m"});
		if (c.contains("initial_radius_m"))
			spec.circle.initial_radius_m = number(c, "circle", "initial_radius_m");
		if (c.contains("growth_factor"))
			spec.circle.growth_factor = number(c, "circle", "growth_factor");
		if (c.contains("max_radius_m"))
			spec.circle.max_radius_m = number(c, "circle", "max_radius_m");
	}
	if (j.contains("sampling"))
	{
		const json& s = j.at("sampling");
		expect_object(s, "sampling", {"samples_per_cell", "sinr_drop_threshold_db", "range_cap_m"});
		if (s.contains("samples_per_cell"))
			spec.sampling.samples_per_cell = static_cast<int>(integer(s, "sampling", "samples_per_cell"));
		if (s.contains("sinr_drop_threshold_db"))
			spec.sampling.sinr_drop_threshold_db = number(s, "sampling", "sinr_drop_threshold_db");
		if (s.contains("range_cap_m"))
			spec.sampling.range_cap_m = number(s, "sampling", "range_cap_m");
	}

	try
	{
		spec.validate();
	}
	catch (const std::invalid_argument& e)
	{
		throw ParseError("<spec>", e.what());
	}
	return spec;
}

} // namespace txp

#endif // TXP_EXPERIMENT_HPP
