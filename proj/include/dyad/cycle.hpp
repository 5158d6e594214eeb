/*
 *   Copyright 2026 The dyad authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

// Cycle detection over the image graph: would committing the candidate
// pair <u,v> close a directed cycle? Used by the acyclicity handler.

#pragma once

#include <optional>

#include "dyad/store.hpp"

namespace dyad {

// How a null-bearing candidate pair is judged. The default treats it as
// incapable of closing a cycle; the literal policy flags it outright.
enum class NullCyclePolicy { never_cycles, always_cycles };

// True when writing <u,v> would close a directed cycle over the non-null
// image pairs, ignoring the contribution of `excluded` (the row being
// edited). A same-node pair is always a cycle; otherwise <u,v> cycles
// exactly when v reaches u through one or more existing pairs.
bool is_cycle(const Store& store, std::optional<RowId> excluded, const Cell& u,
              const Cell& v, NullCyclePolicy policy = NullCyclePolicy::never_cycles);

// All node pairs <a,b> with a path a -> b of length >= 1 over the
// non-null image pairs, optionally ignoring one row's contribution.
PairSet transitive_closure(const Store& store,
                           std::optional<RowId> excluded = std::nullopt);

}  // namespace dyad
