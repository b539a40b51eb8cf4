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

#ifndef TXP_EVALUATE_HPP
#define TXP_EVALUATE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <txp/mcs.hpp>
#include <txp/radio.hpp>
#include <txp/scenario.hpp>

namespace txp {

struct UeRecord
{
	UeId ue = 0;
	CellId serving_cell = 0;
	double sinr_db = 0.0;
	int cqi = 0;
	double throughput_bps = 0.0;

	friend bool operator==(const UeRecord&, const UeRecord&) = default;
};

struct EvaluationResult
{
	std::vector<UeRecord> ues;            // in scenario UE order
	std::map<CellId, int> cell_ue_count;  // every cell, including empty ones
	double total_throughput_bps = 0.0;

	friend bool operator==(const EvaluationResult&, const EvaluationResult&) = default;
};

/**
 * Precomputed linear link gains between every UE and every cell of a
 * scenario. Evaluating a power assignment against it only needs a
 * multiply-add per link, which is what the optimizer calls thousands of
 * times per run.
 */
class LinkMatrix
{
public:
	explicit LinkMatrix(const Scenario& s)
		: cells_(s.cells)
		, ues_(s.ues)
		, noise_mw_(radio::dbm_to_mw(radio::noise_floor_dbm(s.radio)))
		, bandwidth_hz_(s.radio.bandwidth_hz)
		, mcs_(s.radio)
	{
		if (cells_.empty() && !ues_.empty())
			throw std::invalid_argument("scenario has UEs but no cells");
		gain_.resize(ues_.size() * cells_.size());
		for (std::size_t u = 0; u < ues_.size(); ++u)
			for (std::size_t c = 0; c < cells_.size(); ++c)
				gain_[u * cells_.size() + c] =
					radio::dbm_to_mw(-radio::detail::link_loss_db(cells_[c], ues_[u].pos, s.radio));
	}

	std::size_t cell_count() const { return cells_.size(); }
	std::size_t ue_count() const { return ues_.size(); }
	const std::vector<Cell>& cells() const { return cells_; }
	const radio::McsTable& mcs() const { return mcs_; }

	/// TX powers in mW, in scenario cell order.
	std::vector<double> tx_mw(const PowerAssignment& a) const
	{
		std::vector<double> out(cells_.size());
		for (std::size_t c = 0; c < cells_.size(); ++c)
			out[c] = radio::dbm_to_mw(a.at(cells_[c].id));
		return out;
	}

	/// Index of the strongest cell for UE \a u (highest SINR); ties go to the lowest cell id.
	std::size_t best_cell(std::size_t u, std::span<const double> tx_mw) const
	{
		const double* g = &gain_[u * cells_.size()];
		std::size_t best = 0;
		double best_rx = -1.0;
		for (std::size_t c = 0; c < cells_.size(); ++c)
		{
			const double rx = tx_mw[c] * g[c];
			if (rx > best_rx || (rx == best_rx && cells_[c].id < cells_[best].id))
			{
				best = c;
				best_rx = rx;
			}
		}
		return best;
	}

	double sinr_db(std::size_t u, std::size_t serving, std::span<const double> tx_mw) const
	{
		const double* g = &gain_[u * cells_.size()];
		double denom = noise_mw_;
		for (std::size_t c = 0; c < cells_.size(); ++c)
			if (c != serving)
				denom += tx_mw[c] * g[c];
		return radio::mw_to_dbm(tx_mw[serving] * g[serving] / denom);
	}

	EvaluationResult evaluate(std::span<const double> tx_mw) const
	{
		EvaluationResult r;
		r.ues.resize(ues_.size());
		std::vector<int> count(cells_.size(), 0);
		std::vector<double> eff(ues_.size(), 0.0);
		std::vector<std::size_t> serving(ues_.size(), 0);

		for (std::size_t u = 0; u < ues_.size(); ++u)
		{
			serving[u] = best_cell(u, tx_mw);
			const double sinr = sinr_db(u, serving[u], tx_mw);
			r.ues[u] = UeRecord{ues_[u].id, cells_[serving[u]].id, sinr, mcs_.cqi(sinr), 0.0};
			eff[u] = mcs_.efficiency(sinr);
			++count[serving[u]];
		}
		for (std::size_t u = 0; u < ues_.size(); ++u)
		{
			r.ues[u].throughput_bps = eff[u] * bandwidth_hz_ / count[serving[u]];
			r.total_throughput_bps += r.ues[u].throughput_bps;
		}
		for (std::size_t c = 0; c < cells_.size(); ++c)
			r.cell_ue_count[cells_[c].id] = count[c];
		return r;
	}

	EvaluationResult evaluate(const PowerAssignment& a) const { return evaluate(tx_mw(a)); }

	/// Total throughput only; the optimizer's hot path.
	double total_throughput(std::span<const double> tx_mw) const
	{
		std::vector<int> count(cells_.size(), 0);
		std::vector<double> eff(ues_.size(), 0.0);
		std::vector<std::size_t> serving(ues_.size(), 0);
		for (std::size_t u = 0; u < ues_.size(); ++u)
		{
			serving[u] = best_cell(u, tx_mw);
			eff[u] = mcs_.efficiency(sinr_db(u, serving[u], tx_mw));
			++count[serving[u]];
		}
		double total = 0.0;
		for (std::size_t u = 0; u < ues_.size(); ++u)
			total += eff[u] * bandwidth_hz_ / count[serving[u]];
		return total;
	}

private:
	std::vector<Cell> cells_;
	std::vector<Ue> ues_;
	std::vector<double> gain_; // row-major [ue][cell]
	double noise_mw_;
	double bandwidth_hz_;
	radio::McsTable mcs_;
};

/// Each UE to the cell giving it the highest SINR; ties to the lowest cell id.
inline std::map<UeId, CellId> associate_best_sinr(const Scenario& s, const PowerAssignment& a)
{
	s.check_assignment(a);
	const LinkMatrix links(s);
	const auto p = links.tx_mw(a);
	std::map<UeId, CellId> out;
	for (std::size_t u = 0; u < s.ues.size(); ++u)
		out[s.ues[u].id] = s.cells[links.best_cell(u, p)].id;
	return out;
}

/// Each UE to the cell whose site is geometrically nearest; ties to the lowest cell id.
inline std::map<UeId, CellId> associate_nearest(const Scenario& s)
{
	if (s.cells.empty())
		throw std::invalid_argument("cannot associate UEs in a scenario without cells");
	std::map<UeId, CellId> out;
	for (const Ue& u : s.ues)
	{
		const Cell* best = nullptr;
		double best_d = std::numeric_limits<double>::infinity();
		for (const Cell& c : s.cells)
		{
			const double d = distance(c.site, u.pos);
			if (d < best_d || (d == best_d && c.id < best->id))
			{
				best = &c;
				best_d = d;
			}
		}
		out[u.id] = best->id;
	}
	return out;
}

/**
 * Best-SINR association followed by Round-Robin sharing: every UE gets its
 * spectral efficiency times the bandwidth divided by the number of UEs in
 * its serving cell.
 */
inline EvaluationResult evaluate(const Scenario& s, const PowerAssignment& a)
{
	s.check_assignment(a);
	return LinkMatrix(s).evaluate(a);
}

} // namespace txp

#endif // TXP_EVALUATE_HPP
