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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include <txp/topology.hpp>
#include <txp/topology_io.hpp>

#include "test_util.hpp"

using namespace txp;

namespace {

const char* minimal_doc = R"({
  "area": {"x": 1000, "y": 1000},
  "power_domain": {"min": 10, "max": 46, "step": 2},
  "radio": {"frequency_hz": 2e9, "bandwidth_hz": 1e7, "noise_figure_db": 9, "reference_distance_m": 100,
            "bs_height_m": 30, "ue_height_m": 1.5, "sui_terrain": "B", "antenna_beamwidth_deg": 120,
            "antenna_backlobe_attenuation_db": 20, "ber": 5e-5},
  "cells": [{"id": 4, "site": {"x": 500, "y": 500}, "azimuth_deg": 120, "tx_power_dbm": 44}],
  "ues": [{"id": 0, "pos": {"x": 250, "y": 700}}]
})";

std::string field_of(const std::string& doc)
{
	try
	{
		load_topology(doc);
	}
	catch (const ParseError& e)
	{
		return e.field();
	}
	return "<accepted>";
}

std::string replace(std::string s, const std::string& from, const std::string& to)
{
	s.replace(s.find(from), from.size(), to);
	return s;
}

} // namespace

TEST(TopologyIo, MinimalDocumentParses)
{
	const Scenario s = load_topology(minimal_doc);
	ASSERT_EQ(s.cells.size(), 1u);
	ASSERT_EQ(s.ues.size(), 1u);
	EXPECT_EQ(s.cells[0].id, 4);
	EXPECT_EQ(s.cells[0].azimuth_deg, 120.0);
	EXPECT_EQ(s.ues[0].pos, (Position{250, 700}));
	EXPECT_EQ(s.radio, radio::RadioConfig{});
}

TEST(TopologyIo, DuplicateCellIdRejected)
{
	const std::string doc = replace(minimal_doc, R"("cells": [)",
	                                R"("cells": [{"id": 4, "site": {"x": 1, "y": 1}, "azimuth_deg": 0, "tx_power_dbm": 44},)");
	EXPECT_EQ(field_of(doc), "cells");
}

TEST(TopologyIo, UnknownFieldRejectedByName)
{
	EXPECT_EQ(field_of(replace(minimal_doc, R"("ber": 5e-5)", R"("ber": 5e-5, "tilt": 3)")), "radio.tilt");
	EXPECT_EQ(field_of(replace(minimal_doc, R"("id": 0,)", R"("id": 0, "speed": 1,)")), "ues[0].speed");
}

TEST(TopologyIo, MissingAndMistypedFieldsNamed)
{
	EXPECT_EQ(field_of(replace(minimal_doc, R"("azimuth_deg": 120, )", "")), "cells[0].azimuth_deg");
	EXPECT_EQ(field_of(replace(minimal_doc, R"("x": 250)", R"("x": "west")")), "ues[0].pos.x");
	EXPECT_EQ(field_of(replace(minimal_doc, R"("sui_terrain": "B")", R"("sui_terrain": "D")")), "radio.sui_terrain");
	EXPECT_EQ(field_of("{not json"), "<document>");
}

TEST(TopologyIo, HoneycombRoundTrip)
{
	Scenario s = generate_honeycomb(12, 2000.0);
	s.ues = generate_ue_grid(19, 19, s.area);
	EXPECT_EQ(load_topology(save_topology(s)), s);
}

TEST(TopologyIo, RandomScenariosRoundTrip)
{
	std::mt19937_64 rng(5);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for (int trial = 0; trial < 50; ++trial)
	{
		Scenario s = txp::testing::random_toy(rng, 6, 5, 7);
		s.radio.frequency_hz = 7e8 + u(rng) * 3e9;
		s.radio.noise_figure_db = u(rng) * 10.0;
		s.radio.sui_terrain = static_cast<radio::Terrain>(trial % 3);
		for (Cell& c : s.cells)
			c.azimuth_deg = 359.999 * u(rng);
		for (Ue& ue : s.ues)
			ue.pos = {u(rng) * s.area.x, u(rng) * s.area.y};
		EXPECT_EQ(load_topology(save_topology(s)), s);
	}
}

TEST(TopologyIo, PowersDocument)
{
	const PowerAssignment a = powers_from_json(nlohmann::json::parse(R"({"0": 40, "12": 10.0})"));
	EXPECT_EQ(a.at(0), 40.0);
	EXPECT_EQ(a.at(12), 10.0);
	EXPECT_EQ(powers_from_json(powers_to_json(a)), a);
	EXPECT_THROW(powers_from_json(nlohmann::json::parse(R"({"x1": 40})")), ParseError);
	EXPECT_THROW(powers_from_json(nlohmann::json::parse(R"({"1": "hi"})")), ParseError);
}
