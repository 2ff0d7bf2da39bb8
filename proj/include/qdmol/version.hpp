#pragma once

namespace qdmol {
inline constexpr const char* version = "0.1.0";
}
