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

#ifndef SARIS_ERRORS_HPP
#define SARIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saris {

// Invalid or physically inconsistent dipole geometry.
class geometry_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A block that must be inverted is numerically singular.
class singularity_error : public std::runtime_error {
  public:
    singularity_error(const std::string &block, double condition)
        : std::runtime_error("singular block " + block + " (condition number " + std::to_string(condition) + ")"),
          block_(block), condition_(condition) {}

    const std::string &block() const noexcept { return block_; }
    double condition() const noexcept { return condition_; }

  private:
    std::string block_;
    double condition_;
};

class dimension_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Channel matrix is identically zero, so no precoder direction exists.
class degenerate_channel_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Optimizer state used out of sync (e.g. G computed for other loads).
class consistency_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Scenario configuration text is malformed or out of range.
class config_error : public std::invalid_argument {
  public:
    config_error(int line, const std::string &what)
        : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

} // namespace saris

#endif // SARIS_ERRORS_HPP
