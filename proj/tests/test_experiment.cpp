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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <txp/experiment.hpp>

#include "test_util.hpp"

using namespace txp;

namespace {

ExperimentSpec tiny_spec()
{
	ExperimentSpec spec;
	spec.generator = GeneratorParams{4, 1500.0, 6, 6};
	spec.repetitions = 2;
	spec.base_seed = 10;
	spec.ga.generations = 8;
	spec.ga.population_size = 12;
	return spec;
}

std::filesystem::path scratch_dir(const std::string& name)
{
	auto p = std::filesystem::temp_directory_path() / ("txp_test_" + name);
	std::filesystem::remove_all(p);
	return p;
}

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

} // namespace

TEST(Experiment, SingleGlobalRepetition)
{
	ExperimentSpec spec = tiny_spec();
	spec.methods = {"global"};
	spec.repetitions = 1;
	const auto rec = run_experiment(spec);
	ASSERT_EQ(rec.size(), 1u);
	EXPECT_EQ(rec[0].status, "ok");
	EXPECT_EQ(rec[0].seed, 10u);
	EXPECT_LE(rec[0].changed_count, 15);
	EXPECT_EQ(rec[0].selected_count, 15);
	EXPECT_EQ(rec[0].rel_to_global, 1.0);
}

TEST(Experiment, DeterministicAndOrdered)
{
	const ExperimentSpec spec = tiny_spec();
	const auto a = run_experiment(spec);
	const auto b = run_experiment(spec);
	ASSERT_EQ(a.size(), 6u);
	EXPECT_EQ(export_results(a, ExportFormat::csv, false), export_results(b, ExportFormat::csv, false));
	for (std::size_t i = 1; i < a.size(); ++i)
		EXPECT_TRUE(a[i - 1].method < a[i].method || (a[i - 1].method == a[i].method && a[i - 1].seed < a[i].seed));
	for (const auto& r : a)
	{
		ASSERT_EQ(r.status, "ok");
		EXPECT_LE(r.changed_count, r.selected_count);
		EXPECT_GE(r.total_throughput_bps, 0.0);
		ASSERT_TRUE(r.rel_to_global.has_value());
		if (r.method == "global")
		{
			EXPECT_EQ(*r.rel_to_global, 1.0);
		}
	}
}

TEST(Experiment, NoGlobalMeansNoRelativeThroughput)
{
	ExperimentSpec spec = tiny_spec();
	spec.methods = {"sampling"};
	for (const auto& r : run_experiment(spec))
		EXPECT_FALSE(r.rel_to_global.has_value());
}

TEST(Experiment, FailedRunsAreRecorded)
{
	// Off-grid default powers make every optimization reject its starting point.
	Scenario s = generate_honeycomb(2, 1000.0);
	s.ues = generate_ue_grid(3, 3, s.area);
	for (Cell& c : s.cells)
		c.default_tx_power_dbm = 43.0;
	const auto dir = scratch_dir("failed");
	std::filesystem::create_directories(dir);
	std::ofstream(dir / "topo.json") << save_topology(s);

	ExperimentSpec spec = tiny_spec();
	spec.generator.reset();
	spec.topology_file = dir / "topo.json";
	const auto rec = run_experiment(spec);
	ASSERT_EQ(rec.size(), 6u);
	for (const auto& r : rec)
		EXPECT_EQ(r.status.rfind("failed:", 0), 0u) << r.status;
	const std::string csv = export_results(rec, "csv");
	EXPECT_NE(csv.find("failed"), std::string::npos);
}

TEST(Experiment, SpecValidation)
{
	ExperimentSpec spec = tiny_spec();
	spec.methods = {"annealing"};
	EXPECT_THROW(spec.validate(), std::invalid_argument);
	spec = tiny_spec();
	spec.repetitions = 0;
	EXPECT_THROW(spec.validate(), std::invalid_argument);
	spec = tiny_spec();
	spec.topology_file = "x.json";
	EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Export, EmptyCsvIsHeaderOnly)
{
	EXPECT_EQ(export_results({}, "csv"), std::string(records_csv_header) + "\n");
}

TEST(Export, CsvRowCountAndParse)
{
	std::vector<RunRecord> rec(3);
	rec[0] = {"global", 1, 5, 39, 5.5e8, 1.0, 12.5, "ok"};
	rec[1] = {"sampling", 1, 4, 7, 5.49e8, 0.998, 3.25, "ok"};
	rec[2] = {"iterative", 2, 0, 0, 0.0, std::nullopt, 0.0, "failed: boom, \"quoted\""};
	const std::string csv = export_results(rec, "csv");
	EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
	EXPECT_EQ(csv.find('\r'), std::string::npos);
	EXPECT_EQ(read_records_csv(csv), rec);
}

TEST(Export, JsonRoundTrip)
{
	std::vector<RunRecord> rec{{"global", 3, 2, 39, 1.25e8, 1.0, 7.0, "ok"},
	                           {"sampling", 3, 1, 6, 1.2e8, std::nullopt, 2.0, "ok"}};
	EXPECT_EQ(records_from_json(nlohmann::json::parse(export_results(rec, "json"))), rec);
}

TEST(Export, UnknownFormat) { EXPECT_THROW(export_results({}, "xml"), std::invalid_argument); }

TEST(Export, WallTimeSuppressedForDeterminism)
{
	std::vector<RunRecord> rec{{"global", 3, 2, 39, 1.25e8, 1.0, 7.5, "ok"}};
	EXPECT_NE(export_results(rec, ExportFormat::csv, false).find(",0,ok"), std::string::npos);
	EXPECT_NE(export_results(rec, ExportFormat::csv, true).find(",7.5,ok"), std::string::npos);
}

TEST(Compare, SelfComparisonIsZero)
{
	std::vector<RunRecord> rec{{"global", 1, 5, 39, 5.5e8, 1.0, 1.0, "ok"},
	                           {"global", 2, 7, 39, 5.4e8, 1.0, 1.0, "ok"},
	                           {"sampling", 1, 3, 9, 5.6e8, 1.01, 1.0, "ok"}};
	const auto s = compare_records(rec, rec);
	ASSERT_EQ(s.size(), 2u);
	EXPECT_EQ(s[0].method, "global");
	EXPECT_EQ(s[0].pairs, 2u);
	EXPECT_EQ(s[0].mean_throughput_diff_bps, 0.0);
	EXPECT_EQ(s[1].median_changed_diff, 0.0);
}

TEST(Compare, PairsBySeed)
{
	std::vector<RunRecord> a{{"global", 1, 5, 39, 100.0, 1.0, 0, "ok"}, {"global", 2, 5, 39, 100.0, 1.0, 0, "ok"}};
	std::vector<RunRecord> b{{"global", 2, 8, 39, 110.0, 1.0, 0, "ok"}, {"global", 3, 1, 39, 1.0, 1.0, 0, "ok"}};
	const auto s = compare_records(a, b);
	ASSERT_EQ(s.size(), 1u);
	EXPECT_EQ(s[0].pairs, 1u);
	EXPECT_DOUBLE_EQ(s[0].mean_throughput_diff_bps, 10.0);
	EXPECT_DOUBLE_EQ(s[0].mean_relative_throughput_diff, 0.1);
	EXPECT_DOUBLE_EQ(s[0].mean_changed_diff, 3.0);
}

TEST(ExperimentSpecJson, ParsesAndRejects)
{
	const auto j = nlohmann::json::parse(R"({
	  "scenario": {"sites": 12, "isd_m": 2000, "ue_grid": [18, 18]},
	  "methods": ["global", "sampling"], "repetitions": 3, "base_seed": 5,
	  "ga": {"generations": 40}, "sampling": {"sinr_drop_threshold_db": 3.0},
	  "circle": {"growth_factor": 2.0}
	})");
	const ExperimentSpec spec = experiment_spec_from_json(j);
	ASSERT_TRUE(spec.generator.has_value());
	EXPECT_EQ(spec.generator->sites, 12);
	EXPECT_EQ(spec.generator->ue_nx, 18);
	EXPECT_EQ(spec.methods, (std::vector<std::string>{"global", "sampling"}));
	EXPECT_EQ(spec.ga.generations, 40);
	EXPECT_EQ(spec.sampling.sinr_drop_threshold_db, 3.0);
	EXPECT_EQ(spec.circle.growth_factor, 2.0);

	auto bad = j;
	bad["ga"]["mutation"] = 0.1;
	try
	{
		experiment_spec_from_json(bad);
		FAIL() << "unknown field accepted";
	}
	catch (const ParseError& e)
	{
		EXPECT_EQ(e.field(), "ga.mutation");
	}
	bad = j;
	bad["methods"] = {"simulated_annealing"};
	EXPECT_THROW(experiment_spec_from_json(bad), ParseError);
}

TEST(ExperimentOutputs, FilesWritten)
{
	const ExperimentSpec spec = tiny_spec();
	const auto rec = run_experiment(spec);
	const auto dir = scratch_dir("outputs");
	write_experiment_outputs(rec, spec, dir);
	for (const char* f : {"records.csv", "timings.csv", "boxplot_changed_count.csv", "boxplot_throughput.csv",
	                      "boxplot_rel_to_global.csv", "ecdf_changed_sampling.csv", "ecdf_rel_to_global_sampling.csv",
	                      "ecdf_changed_global.csv", "ecdf_changed_iterative.csv"})
		EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
	EXPECT_EQ(read_records_csv(slurp(dir / "records.csv")).size(), rec.size());
	const std::string box = slurp(dir / "boxplot_changed_count.csv");
	EXPECT_EQ(std::count(box.begin(), box.end(), '\n'), 4);
}
