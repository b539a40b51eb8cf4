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

#ifndef TXP_TOPOLOGY_IO_HPP
#define TXP_TOPOLOGY_IO_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include <txp/scenario.hpp>

namespace txp {

/// Malformed topology or configuration document.
class ParseError : public std::runtime_error
{
public:
	ParseError(const std::string& field, const std::string& what)
		: std::runtime_error(field + ": " + what), field_(field)
	{}

	const std::string& field() const { return field_; }

private:
	std::string field_;
};

namespace json_detail {

using nlohmann::json;

inline void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> keys)
{
	if (!j.is_object())
		throw ParseError(path.empty() ? "<root>" : path, "expected an object");
	for (const auto& [k, v] : j.items())
	{
		bool known = false;
		for (std::string_view allowed : keys)
			known = known || k == allowed;
		if (!known)
			throw ParseError(path.empty() ? k : path + "." + k, "unknown field");
	}
}

inline const json& field(const json& j, const std::string& path, const char* key)
{
	auto it = j.find(key);
	const std::string where = path.empty() ? key : path + "." + key;
	if (it == j.end())
		throw ParseError(where, "missing field");
	return *it;
}

inline double number(const json& j, const std::string& path, const char* key)
{
	const json& v = field(j, path, key);
	if (!v.is_number())
		throw ParseError(path.empty() ? key : path + "." + key, "expected a number");
	return v.get<double>();
}

inline std::int64_t integer(const json& j, const std::string& path, const char* key)
{
	const json& v = field(j, path, key);
	if (!v.is_number_integer())
		throw ParseError(path.empty() ? key : path + "." + key, "expected an integer");
	return v.get<std::int64_t>();
}

inline Position position(const json& j, const std::string& path)
{
	expect_object(j, path, {"x", "y"});
	return {number(j, path, "x"), number(j, path, "y")};
}

inline json to_json(const Position& p) { return {{"x", p.x}, {"y", p.y}}; }

inline std::string terrain_name(radio::Terrain t)
{
	switch (t)
	{
		case radio::Terrain::A: return "A";
		case radio::Terrain::B: return "B";
		case radio::Terrain::C: return "C";
	}
	return "?";
}

} // namespace json_detail

inline nlohmann::json radio_to_json(const radio::RadioConfig& r)
{
	return {
		{"frequency_hz", r.frequency_hz},
		{"bandwidth_hz", r.bandwidth_hz},
		{"noise_figure_db", r.noise_figure_db},
		{"reference_distance_m", r.reference_distance_m},
		{"bs_height_m", r.bs_height_m},
		{"ue_height_m", r.ue_height_m},
		{"sui_terrain", json_detail::terrain_name(r.sui_terrain)},
		{"antenna_beamwidth_deg", r.antenna_beamwidth_deg},
		{"antenna_backlobe_attenuation_db", r.antenna_backlobe_attenuation_db},
		{"ber", r.ber},
	};
}

inline radio::RadioConfig radio_from_json(const nlohmann::json& j, const std::string& path = "radio")
{
	using namespace json_detail;
	expect_object(j, path,
	              {"frequency_hz", "bandwidth_hz", "noise_figure_db", "reference_distance_m", "bs_height_m",
	               "ue_height_m", "sui_terrain", "antenna_beamwidth_deg", "antenna_backlobe_attenuation_db", "ber"});
	radio::RadioConfig r;
	r.frequency_hz = number(j, path, "frequency_hz");
	r.bandwidth_hz = number(j, path, "bandwidth_hz");
	r.noise_figure_db = number(j, path, "noise_figure_db");
	r.reference_distance_m = number(j, path, "reference_distance_m");
	r.bs_height_m = number(j, path, "bs_height_m");
	r.ue_height_m = number(j, path, "ue_height_m");
	const json& t = field(j, path, "sui_terrain");
	if (t == "A")
		r.sui_terrain = radio::Terrain::A;
	else if (t == "B")
		r.sui_terrain = radio::Terrain::B;
	else if (t == "C")
		r.sui_terrain = radio::Terrain::C;
	else
		throw ParseError(path + ".sui_terrain", "expected \"A\", \"B\" or \"C\"");
	r.antenna_beamwidth_deg = number(j, path, "antenna_beamwidth_deg");
	r.antenna_backlobe_attenuation_db = number(j, path, "antenna_backlobe_attenuation_db");
	r.ber = number(j, path, "ber");
	try
	{
		r.validate();
	}
	catch (const std::invalid_argument& e)
	{
		throw ParseError(path, e.what());
	}
	return r;
}

inline nlohmann::json scenario_to_json(const Scenario& s)
{
	using json_detail::to_json;
	nlohmann::json cells = nlohmann::json::array();
	for (const Cell& c : s.cells)
		cells.push_back({{"id", c.id}, {"site", to_json(c.site)}, {"azimuth_deg", c.azimuth_deg},
		                 {"tx_power_dbm", c.default_tx_power_dbm}});
	nlohmann::json ues = nlohmann::json::array();
	for (const Ue& u : s.ues)
		ues.push_back({{"id", u.id}, {"pos", to_json(u.pos)}});
	return {
		{"area", {{"x", s.area.x}, {"y", s.area.y}}},
		{"power_domain", {{"min", s.power_domain.min_dbm}, {"max", s.power_domain.max_dbm}, {"step", s.power_domain.step_db}}},
		{"radio", radio_to_json(s.radio)},
		{"cells", std::move(cells)},
		{"ues", std::move(ues)},
	};
}

inline Scenario scenario_from_json(const nlohmann::json& j)
{
	using namespace json_detail;
	expect_object(j, "", {"area", "power_domain", "radio", "cells", "ues"});

	Scenario s;
	const json& area = field(j, "", "area");
	expect_object(area, "area", {"x", "y"});
	s.area = {number(area, "area", "x"), number(area, "area", "y")};

	const json& pd = field(j, "", "power_domain");
	expect_object(pd, "power_domain", {"min", "max", "step"});
	s.power_domain = {number(pd, "power_domain", "min"), number(pd, "power_domain", "max"),
	                  number(pd, "power_domain", "step")};

	s.radio = radio_from_json(field(j, "", "radio"));

	const json& cells = field(j, "", "cells");
	if (!cells.is_array())
		throw ParseError("cells", "expected an array");
	for (std::size_t i = 0; i < cells.size(); ++i)
	{
		const std::string path = "cells[" + std::to_string(i) + "]";
		const json& c = cells[i];
		expect_object(c, path, {"id", "site", "azimuth_deg", "tx_power_dbm"});
		s.cells.push_back(Cell{integer(c, path, "id"), position(field(c, path, "site"), path + ".site"),
		                       number(c, path, "azimuth_deg"), number(c, path, "tx_power_dbm")});
	}

	const json& ues = field(j, "", "ues");
	if (!ues.is_array())
		throw ParseError("ues", "expected an array");
	for (std::size_t i = 0; i < ues.size(); ++i)
	{
		const std::string path = "ues[" + std::to_string(i) + "]";
		const json& u = ues[i];
		expect_object(u, path, {"id", "pos"});
		s.ues.push_back(Ue{integer(u, path, "id"), position(field(u, path, "pos"), path + ".pos")});
	}

	try
	{
		s.validate();
	}
	catch (const std::invalid_argument& e)
	{
		const std::string msg = e.what();
		throw ParseError(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
	}
	return s;
}

inline std::string save_topology(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

inline Scenario load_topology(std::string_view bytes)
{
	nlohmann::json j;
	try
	{
		j = nlohmann::json::parse(bytes);
	}
	catch (const nlohmann::json::parse_error& e)
	{
		throw ParseError("<document>", e.what());
	}
	return scenario_from_json(j);
}

/// Power file: {"<cell id>": dBm, ...}.
inline PowerAssignment powers_from_json(const nlohmann::json& j)
{
	if (!j.is_object())
		throw ParseError("<root>", "expected an object mapping cell id to dBm");
	PowerAssignment a;
	for (const auto& [k, v] : j.items())
	{
		if (!v.is_number())
			throw ParseError(k, "expected a number");
		std::size_t pos = 0;
		CellId id = 0;
		try
		{
			id = std::stoll(k, &pos);
		}
		catch (const std::exception&)
		{
			pos = 0;
		}
		if (pos != k.size() || k.empty())
			throw ParseError(k, "cell id keys must be integers");
		a.set(id, v.get<double>());
	}
	return a;
}

inline nlohmann::json powers_to_json(const PowerAssignment& a)
{
	nlohmann::json j = nlohmann::json::object();
	for (const auto& [id, p] : a)
		j[std::to_string(id)] = p;
	return j;
}

} // namespace txp

#endif // TXP_TOPOLOGY_IO_HPP
