#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace relax {

enum class OctClass : std::size_t { kCNV = 0, kDME = 1, kDrusen = 2, kNormal = 3 };

inline constexpr std::size_t kClassCount = 4;
inline constexpr std::array<OctClass, kClassCount> kAllClasses = {
    OctClass::kCNV, OctClass::kDME, OctClass::kDrusen, OctClass::kNormal};

std::string_view class_name(OctClass c) noexcept;

/// Accepts names case-insensitively ("cnv", "Drusen", ...). Throws ValidationError.
OctClass parse_class(std::string_view name);
std::optional<OctClass> try_parse_class(std::string_view name) noexcept;

constexpr std::size_t index_of(OctClass c) noexcept { return static_cast<std::size_t>(c); }

}  // namespace relax
