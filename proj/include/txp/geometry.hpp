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

#ifndef TXP_GEOMETRY_HPP
#define TXP_GEOMETRY_HPP

#include <cmath>
#include <numbers>

namespace txp {

/// Planar position in meters.
struct Position
{
	double x = 0.0;
	double y = 0.0;

	friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(const Position& a, const Position& b)
{
	return std::hypot(b.x - a.x, b.y - a.y);
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into [-180, 180].
inline double normalize_bearing(double deg)
{
	double r = std::fmod(deg, 360.0);
	if (r > 180.0)
		r -= 360.0;
	else if (r < -180.0)
		r += 360.0;
	return r;
}

/// Wraps an angle in degrees into [0, 360).
inline double normalize_azimuth(double deg)
{
	double r = std::fmod(deg, 360.0);
	if (r < 0.0)
		r += 360.0;
	return r >= 360.0 ? 0.0 : r;
}

/**
 * Bearing from \a from towards \a to in degrees, measured counter-clockwise
 * from the +x axis. Azimuths of sector antennas use the same convention.
 */
inline double bearing_deg(const Position& from, const Position& to)
{
	return rad_to_deg(std::atan2(to.y - from.y, to.x - from.x));
}

} // namespace txp

#endif // TXP_GEOMETRY_HPP
