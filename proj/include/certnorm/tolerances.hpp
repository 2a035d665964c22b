#pragma once

// Central tolerance constants. Witness verification is kept one order
// looser than the solver gap so certified witnesses always re-verify.

namespace certnorm {

// Absolute tolerance for reconstruction and witness verification.
inline constexpr double kTolMatch = 1e-6;

// Default relative tolerance for positive-semidefiniteness tests.
inline constexpr double kTolPsd = 1e-8;

// Relative duality-gap target of the interior-point solver.
inline constexpr double kTolSdp = 1e-7;

// Interior-point iteration cap.
inline constexpr int kSdpMaxIterations = 200;

// Hard floor for user-supplied solver tolerances.
inline constexpr double kTolSdpFloor = 1e-9;

// Dimension cap for sign-vector enumeration (2^24 ~ 16M vectors).
inline constexpr int kSignEnumCap = 24;

}  // namespace certnorm
