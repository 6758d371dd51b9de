// Copyright 2026 The vdqc-cutchoose Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file Umbrella header. The scenario and report layers additionally need
/// nlohmann/json on the include path.

#pragma once

#include "bounds.hpp"
#include "channel.hpp"
#include "comb.hpp"
#include "eigen.hpp"
#include "errors.hpp"
#include "general_protocol.hpp"
#include "matrix.hpp"
#include "measures.hpp"
#include "monte_carlo.hpp"
#include "numerical_range.hpp"
#include "protocol.hpp"
#include "quantum_objects.hpp"
#include "random.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "selftest.hpp"
#include "states.hpp"
#include "strategy.hpp"
#include "tolerances.hpp"
