// Copyright 2026 The kerrlhz Authors
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

#include <numbers>

// Configs quote frequencies as nu = omega / 2pi in GHz. The engine works in
// angular frequency (rad/ns) with time in ns.
namespace kerrlhz::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double angular(double ghz) { return two_pi * ghz; }
constexpr double ghz(double rad_per_ns) { return rad_per_ns / two_pi; }

constexpr double mhz_from_ghz(double ghz) { return ghz * 1e3; }
constexpr double khz_from_ghz(double ghz) { return ghz * 1e6; }

// Decay rates are quoted per microsecond.
constexpr double per_ns(double per_us) { return per_us * 1e-3; }

// CODATA 2018 exact values.
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;              // J s

}  // namespace kerrlhz::units
