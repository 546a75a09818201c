// Copyright 2026 The symtwirl Authors
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

// Umbrella header for the numerical core. JSON support lives separately in
// report_io.hpp so the core needs only Eigen.

#pragma once

#include "symtwirl/errors.hpp"
#include "symtwirl/rng.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/groups.hpp"
#include "symtwirl/twirl.hpp"
#include "symtwirl/commutant.hpp"
#include "symtwirl/metrology.hpp"
#include "symtwirl/sampler.hpp"
#include "symtwirl/apps.hpp"
