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

#include "mmsite/error.hpp"

namespace mmsite
{

const char *error_code_name(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::PlacementFailure: return "PlacementFailure";
    case ErrorCode::EmptyServiceArea: return "EmptyServiceArea";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NoBuildings: return "NoBuildings";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::InvalidHeights: return "InvalidHeights";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoArms: return "NoArms";
    case ErrorCode::InvalidTemperature: return "InvalidTemperature";
    case ErrorCode::InvalidReward: return "InvalidReward";
    case ErrorCode::ArmNeverSelected: return "ArmNeverSelected";
    case ErrorCode::MissingArtifacts: return "MissingArtifacts";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

int error_exit_code(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidTemperature:
        return 2;
    case ErrorCode::IOFailure:
    case ErrorCode::FormatError:
    case ErrorCode::MissingArtifacts:
        return 3;
    default:
        return 4;
    }
}

} // namespace mmsite
