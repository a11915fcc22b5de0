// Copyright 2026 The mzsim Authors
//
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

#pragma once

#include "mzsim/analysis.hpp"
#include "mzsim/angles.hpp"
#include "mzsim/correlation.hpp"
#include "mzsim/envelope.hpp"
#include "mzsim/eom.hpp"
#include "mzsim/interferometer.hpp"
#include "mzsim/io.hpp"
#include "mzsim/jones.hpp"
#include "mzsim/montecarlo.hpp"
#include "mzsim/rng.hpp"
#include "mzsim/scenarios.hpp"
#include "mzsim/time_grid.hpp"
#include "mzsim/wavepacket.hpp"
