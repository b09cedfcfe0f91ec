// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef APERIODIC_HPP
#define APERIODIC_HPP

#include "aperiodic/array.hpp"
#include "aperiodic/beamform.hpp"
#include "aperiodic/channel.hpp"
#include "aperiodic/engine.hpp"
#include "aperiodic/errors.hpp"
#include "aperiodic/experiment.hpp"
#include "aperiodic/metrics.hpp"
#include "aperiodic/random.hpp"
#include "aperiodic/scenario.hpp"
#include "aperiodic/synthesis.hpp"

#endif
