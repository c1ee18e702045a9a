// Copyright 2026 The twinbeam Authors
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

#pragma once

#include "twinbeam/config.hpp"
#include "twinbeam/constants.hpp"
#include "twinbeam/detection.hpp"
#include "twinbeam/digest.hpp"
#include "twinbeam/error.hpp"
#include "twinbeam/etalon_tuning.hpp"
#include "twinbeam/experiment.hpp"
#include "twinbeam/fwm.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/monte_carlo.hpp"
#include "twinbeam/optics.hpp"
#include "twinbeam/random.hpp"
#include "twinbeam/trace_io.hpp"
