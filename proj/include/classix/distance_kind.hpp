#pragma once

#include <string>
#include <string_view>

namespace classix {

enum class DistanceKind { Manhattan, Tanimoto };

std::string_view to_string(DistanceKind kind);
// Accepts "manhattan" / "tanimoto" (case-sensitive); throws InvalidInput otherwise.
DistanceKind parse_distance_kind(std::string_view name);

}  // namespace classix
