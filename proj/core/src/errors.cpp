// Copyright 2026 The ptwalk Authors
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

#include "ptwalk/errors.hpp"

namespace ptwalk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::NoBreaking: return "NoBreaking";
    case ErrorCode::BrokenRegime: return "BrokenRegime";
    case ErrorCode::DegenerateAtK: return "DegenerateAtK";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::IncompatibleMetrics: return "IncompatibleMetrics";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::LightConeViolation: return "LightConeViolation";
    case ErrorCode::ImpureInitial: return "ImpureInitial";
    case ErrorCode::SpectrumNotReal: return "SpectrumNotReal";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::MissingArtifacts: return "MissingArtifacts";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ptwalk
