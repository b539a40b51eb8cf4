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

#ifndef TXP_TXP_HPP
#define TXP_TXP_HPP

#include <txp/evaluate.hpp>
#include <txp/experiment.hpp>
#include <txp/geometry.hpp>
#include <txp/mcs.hpp>
#include <txp/neighborhood.hpp>
#include <txp/optimize.hpp>
#include <txp/radio.hpp>
#include <txp/scenario.hpp>
#include <txp/sga.hpp>
#include <txp/stats.hpp>
#include <txp/topology.hpp>
#include <txp/topology_io.hpp>
#include <txp/types.hpp>

#endif // TXP_TXP_HPP
