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

#ifndef MBLOCH_ERRORS_HPP
#define MBLOCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mbloch {

/// Raised when an argument violates an operation's precondition
/// (non-finite input, off-leaf point, parameter outside its family).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when a chart or reduced field is evaluated on its singular locus
/// (r1 = 0 in the polar chart, x2 = 0 on M1).
class singularity_error : public domain_error {
public:
  using domain_error::domain_error;
};

} // namespace mbloch

#endif // MBLOCH_ERRORS_HPP
