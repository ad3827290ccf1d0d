// Copyright 2026 The teelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace teelab {

/// Base class of every error raised by the library. `kind()` is a stable
/// identifier used in reports and on the command line.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string &what) : std::runtime_error(what), kind_(std::move(kind)) {
    }
    const std::string &kind() const noexcept {
        return kind_;
    }

   private:
    std::string kind_;
};

#define TEELAB_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                          \
       public:                                                           \
        explicit Name(const std::string &what) : Error(#Name, what) {    \
        }                                                                \
    };

// fusion_algebra
TEELAB_DEFINE_ERROR(MalformedInput)
TEELAB_DEFINE_ERROR(InvalidCategory)
TEELAB_DEFINE_ERROR(NonConvergence)
TEELAB_DEFINE_ERROR(ConditionOneViolated)
TEELAB_DEFINE_ERROR(DegenerateDistribution)

// dense_state_lab
TEELAB_DEFINE_ERROR(UnknownFactor)
TEELAB_DEFINE_ERROR(SpectrumFailure)
TEELAB_DEFINE_ERROR(InvalidState)
TEELAB_DEFINE_ERROR(SupportViolation)
TEELAB_DEFINE_ERROR(DimensionCap)

// ring_family / stabilizer_tee
TEELAB_DEFINE_ERROR(SiteInThinnedRegion)
TEELAB_DEFINE_ERROR(InsufficientWidth)
TEELAB_DEFINE_ERROR(RankDeficiency)
TEELAB_DEFINE_ERROR(PathBlocked)
TEELAB_DEFINE_ERROR(InvalidGeometry)

// proof_audit
TEELAB_DEFINE_ERROR(PremiseViolated)
TEELAB_DEFINE_ERROR(EpsilonOutOfRange)

// cli_report
TEELAB_DEFINE_ERROR(ConfigError)

#undef TEELAB_DEFINE_ERROR

}  // namespace teelab
