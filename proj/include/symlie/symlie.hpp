// Copyright 2026 The symlie Authors
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

#include "symlie/combinatorics.hpp"
#include "symlie/dense.hpp"
#include "symlie/dense_oracle.hpp"
#include "symlie/errors.hpp"
#include "symlie/group_spec.hpp"
#include "symlie/parallel.hpp"
#include "symlie/pauli.hpp"
#include "symlie/permutation.hpp"
#include "symlie/rng.hpp"
#include "symlie/statevector.hpp"
#include "symlie/variance.hpp"
