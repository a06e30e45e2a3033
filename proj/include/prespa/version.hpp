#pragma once

namespace prespa {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kUnitNote =
    "frequencies cyclic (MHz/kHz), times us, rates 1/us; Hamiltonians rad/us";

}  // namespace prespa
