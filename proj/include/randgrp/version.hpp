#pragma once

namespace randgrp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace randgrp
