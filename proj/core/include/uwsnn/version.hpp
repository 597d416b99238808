#pragma once

namespace uwsnn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace uwsnn
