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

// Definitional checker: decides each constraint subtype directly from
// its definition by brute-force scans of the store image. Deliberately
// independent of the enforcement engine so the two can cross-check.

#pragma once

#include <string>
#include <vector>

#include "dyad/constraints.hpp"
#include "dyad/store.hpp"

namespace dyad {

struct Verdict {
  Subtype subtype;
  bool holds = false;
  // First counterexample in label order, e.g. "(ann,bob)"; empty if holds.
  std::string witness;

  std::string render() const;
};

Verdict holds(const Store& store, Subtype subtype);
std::vector<Verdict> holds_all(const Store& store, const ConstraintSet& declared);

}  // namespace dyad
