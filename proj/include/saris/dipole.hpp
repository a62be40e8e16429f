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

#ifndef SARIS_DIPOLE_HPP
#define SARIS_DIPOLE_HPP

#include <cmath>
#include <string_view>

#include <Eigen/Dense>

#include "saris/errors.hpp"

namespace saris {

enum class role { transmitter, receiver, ris_cell, eso };

inline std::string_view to_string(role r) {
    switch (r) {
    case role::transmitter:
        return "transmitter";
    case role::receiver:
        return "receiver";
    case role::ris_cell:
        return "ris_cell";
    case role::eso:
        return "eso";
    }
    return "unknown";
}

// Thin-wire dipole aligned with the z-axis, fed (or loaded) at its center.
struct dipole {
    Eigen::Vector3d position = Eigen::Vector3d::Zero(); // center, meters
    double length = 0.0;                                 // meters
    double wire_radius = 0.0;                            // meters
    role kind = role::eso;

    double half_length() const { return 0.5 * length; }

    void validate() const {
        if (!(length > 0.0) || !std::isfinite(length))
            throw geometry_error("dipole length must be positive");
        if (!(wire_radius > 0.0) || !std::isfinite(wire_radius))
            throw geometry_error("dipole wire radius must be positive");
        if (!(wire_radius < length / 10.0))
            throw geometry_error("dipole wire radius must be below length/10 (thin-wire regime)");
        if (!position.allFinite())
            throw geometry_error("dipole position must be finite");
    }

    bool same_wire(const dipole &o) const {
        return position == o.position && length == o.length && wire_radius == o.wire_radius;
    }

    bool operator==(const dipole &o) const { return same_wire(o) && kind == o.kind; }
};

} // namespace saris

#endif // SARIS_DIPOLE_HPP
