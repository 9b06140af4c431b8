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

#include "qchan/basis.hpp"
#include "qchan/channel.hpp"
#include "qchan/contraction.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/error.hpp"
#include "qchan/linalg.hpp"
#include "qchan/qubit.hpp"
#include "qchan/random.hpp"
#include "qchan/spectral.hpp"
