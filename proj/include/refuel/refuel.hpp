// Copyright 2026 The Refuel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REFUEL_REFUEL_HPP_
#define REFUEL_REFUEL_HPP_

#include "refuel/bench.hpp"
#include "refuel/bnb.hpp"
#include "refuel/cut_solver.hpp"
#include "refuel/graph_algorithms.hpp"
#include "refuel/heuristic.hpp"
#include "refuel/instance_io.hpp"
#include "refuel/lifted_cover.hpp"
#include "refuel/lp.hpp"
#include "refuel/network.hpp"
#include "refuel/oracle.hpp"
#include "refuel/path_solver.hpp"
#include "refuel/solver_config.hpp"

#endif  // REFUEL_REFUEL_HPP_
