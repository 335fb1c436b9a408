// SPDX-License-Identifier: Apache-2.0
//
// fsochan - statistical channel model for hovering-UAV optical links
// Copyright (C) 2026 The fsochan authors
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

#ifndef FSOCHAN_FSOCHAN_HPP
#define FSOCHAN_FSOCHAN_HPP

#include "atmosphere.hpp"
#include "conditional_gml.hpp"
#include "errors.hpp"
#include "fluctuation_models.hpp"
#include "geometry.hpp"
#include "gml_statistics.hpp"
#include "link_performance.hpp"
#include "monte_carlo.hpp"
#include "presets.hpp"
#include "random.hpp"
#include "special_math.hpp"

#endif
