#include "relax/classes.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "relax/errors.hpp"

namespace relax {

std::string_view class_name(OctClass c) noexcept {
  switch (c) {
    case OctClass::kCNV: return "CNV";
    case OctClass::kDME: return "DME";
    case OctClass::kDrusen: return "DRUSEN";
    case OctClass::kNormal: return "NORMAL";
  }
  return "?";
}

std::optional<OctClass> try_parse_class(std::string_view name) noexcept {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (OctClass c : kAllClasses) {
    if (class_name(c) == upper) return c;
  }
  return std::nullopt;
}

OctClass parse_class(std::string_view name) {
  if (auto c = try_parse_class(name)) return *c;
  throw ValidationError("unknown class label '" + std::string(name) + "'");
}

}  // namespace relax
