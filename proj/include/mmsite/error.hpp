// SPDX-License-Identifier: Apache-2.0
//
// mmsite: mmWave base-station site selection by multi-armed bandit learning
// Copyright (C) 2026 The mmsite authors
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

#ifndef MMSITE_ERROR_HPP
#define MMSITE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mmsite
{

// Numeric values are part of the C ABI (see mmsite.h), do not reorder.
enum class ErrorCode : int
{
    ConfigInvalid = 1,
    IOFailure = 2,
    FormatError = 3,
    PlacementFailure = 4,
    EmptyServiceArea = 5,
    OutOfBounds = 6,
    NoBuildings = 7,
    NoCandidates = 8,
    InvalidHeights = 9,
    GridMismatch = 10,
    NoArms = 11,
    InvalidTemperature = 12,
    InvalidReward = 13,
    ArmNeverSelected = 14,
    MissingArtifacts = 15,
    InvalidArgument = 16,
    Internal = 17,
};

const char *error_code_name(ErrorCode code) noexcept;

// Process exit status for a failure of this kind: 2 config, 3 input format, 4 runtime.
int error_exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace mmsite

#endif
