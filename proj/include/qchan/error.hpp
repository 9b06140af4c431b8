// Copyright 2026 The qchan Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qchan {

/// Input violates a documented precondition (shape, range, CPTP, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bistochastic channel whose fixed-point space is larger than the scalars.
class NotErgodic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A bound was requested for a channel outside the class it is proven for.
class OutsideBoundClass : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A decomposition failed or two independent computations disagree.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qchan
