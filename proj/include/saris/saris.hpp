// SPDX-License-Identifier: Apache-2.0
//
// saris-sim: scattering-aware RIS channel simulator and optimizer
// Copyright (C) 2026 The saris-sim Authors
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

#ifndef SARIS_SARIS_HPP
#define SARIS_SARIS_HPP

#include "saris/channel.hpp"
#include "saris/dipole.hpp"
#include "saris/errors.hpp"
#include "saris/experiment.hpp"
#include "saris/impedance.hpp"
#include "saris/linalg.hpp"
#include "saris/optimizer.hpp"
#include "saris/philox.hpp"
#include "saris/quadrature.hpp"
#include "saris/scenario.hpp"

#endif // SARIS_SARIS_HPP
