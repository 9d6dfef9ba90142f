#pragma once

#include <cstdint>
#include <limits>

namespace gdrr {

using Length = std::int32_t;
using Area = std::int64_t;

/// Bin-area limit used before any feasible solution exists.
inline constexpr Area kUnlimitedArea = std::numeric_limits<Area>::max();

/// Direction of a guillotine cut. A Vertical structure node partitions its
/// width among its children, a Horizontal one partitions its height.
enum class Cut : std::uint8_t { Vertical, Horizontal };

inline constexpr Cut other(Cut c) { return c == Cut::Vertical ? Cut::Horizontal : Cut::Vertical; }

inline constexpr char cut_char(Cut c) { return c == Cut::Vertical ? 'V' : 'H'; }

}  // namespace gdrr
