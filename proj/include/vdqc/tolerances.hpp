// Copyright 2026 The vdqc-cutchoose Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

namespace vdqc::tol {

// Validation of inputs (Hermiticity, PSD, trace).
inline constexpr double kValidation = 1e-10;
// Numerical identities asserted by tests and proof-step checks.
inline constexpr double kIdentity = 1e-9;
// Normalization of pure states.
inline constexpr double kNormalization = 1e-12;
// Hermiticity of a constructed density operator, entrywise.
inline constexpr double kHermitian = 1e-12;
// Eigenvalues in [-kClamp, 0) are clamped to zero before taking roots.
inline constexpr double kClamp = 1e-8;
// Slack on final bound comparisons.
inline constexpr double kBound = 1e-12;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

} // namespace vdqc::tol
