#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace polish {

/// The six laws a(bc) = (ab)(R), named by the right factor R.
enum class Law {
  AC,   ///< left distributivity: a(bc) = (ab)(ac)
  BC,   ///< central duplication: a(bc) = (ab)(bc)
  CA,   ///< a(bc) = (ab)(ca)
  CB,   ///< a(bc) = (ab)(cb)
  CC,   ///< right duplication: a(bc) = (ab)(cc)
  AAC,  ///< a(bc) = (ab)(a(ac))
};

inline constexpr std::array<Law, 6> kAllLaws = {Law::AC, Law::BC, Law::CA,
                                                Law::CB, Law::CC, Law::AAC};

constexpr std::string_view law_name(Law law) noexcept {
  switch (law) {
    case Law::AC: return "ac";
    case Law::BC: return "bc";
    case Law::CA: return "ca";
    case Law::CB: return "cb";
    case Law::CC: return "cc";
    case Law::AAC: return "aac";
  }
  return "?";
}

/// Accepts the lower- or upper-case short name.
constexpr std::optional<Law> parse_law(std::string_view name) noexcept {
  for (Law law : kAllLaws) {
    std::string_view n = law_name(law);
    if (n.size() != name.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < n.size(); ++i) {
      char c = name[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (c != n[i]) same = false;
    }
    if (same) return law;
  }
  return std::nullopt;
}

}  // namespace polish
