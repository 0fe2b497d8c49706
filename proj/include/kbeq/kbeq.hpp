// Copyright 2026 The kbeq Authors
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

#ifndef KBEQ_KBEQ_HPP
#define KBEQ_KBEQ_HPP

#include "kbeq/rational.hpp"
#include "kbeq/eps.hpp"
#include "kbeq/field.hpp"
#include "kbeq/literal.hpp"
#include "kbeq/lp.hpp"
#include "kbeq/games.hpp"
#include "kbeq/systems.hpp"
#include "kbeq/epistemic.hpp"
#include "kbeq/solutions.hpp"
#include "kbeq/dsl.hpp"

#endif  // KBEQ_KBEQ_HPP
