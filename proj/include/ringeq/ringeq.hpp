// Copyright 2026 The ringeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RINGEQ_RINGEQ_HPP_
#define RINGEQ_RINGEQ_HPP_

#include "ringeq/catalog.hpp"
#include "ringeq/cli_io.hpp"
#include "ringeq/counterexamples.hpp"
#include "ringeq/coverage_analysis.hpp"
#include "ringeq/error.hpp"
#include "ringeq/game_engine.hpp"
#include "ringeq/mixed_graph.hpp"
#include "ringeq/rational.hpp"
#include "ringeq/ring_model.hpp"

#endif  // RINGEQ_RINGEQ_HPP_
