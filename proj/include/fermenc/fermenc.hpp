// Copyright 2026 The fermenc Authors
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

#include "fermenc/symplectic.hpp"
#include "fermenc/lattice.hpp"
#include "fermenc/fermion.hpp"
#include "fermenc/encoding.hpp"
#include "fermenc/syndrome.hpp"
#include "fermenc/distance.hpp"
#include "fermenc/metrics.hpp"
#include "fermenc/pareto.hpp"
#include "fermenc/search_bruteforce.hpp"
#include "fermenc/search_clifford.hpp"
#include "fermenc/connectivity.hpp"
