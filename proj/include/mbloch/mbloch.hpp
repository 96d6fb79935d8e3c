// Copyright 2026 The mbloch Authors
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

#ifndef MBLOCH_MBLOCH_HPP
#define MBLOCH_MBLOCH_HPP

#include "mbloch/core.hpp"
#include "mbloch/equilibria.hpp"
#include "mbloch/errors.hpp"
#include "mbloch/integrate.hpp"
#include "mbloch/invariant_sets.hpp"
#include "mbloch/io.hpp"
#include "mbloch/quartic.hpp"
#include "mbloch/solutions.hpp"
#include "mbloch/verify.hpp"

#endif // MBLOCH_MBLOCH_HPP
