// SPDX-License-Identifier: MIT
#pragma once

namespace nlrta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nlrta
