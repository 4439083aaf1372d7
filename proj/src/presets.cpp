#include "amcrn/presets.hpp"

#include <algorithm>

#include "amcrn/errors.hpp"

namespace amcrn::presets {

const std::vector<Preset>& all() { return detail::embedded(); }

const Preset& find(std::string_view name) {
  const auto& table = all();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Preset& p) { return p.name == name; });
  if (it == table.end()) {
    throw ValidationError("preset", "no preset named '" + std::string(name) + "'");
  }
  return *it;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& p : all()) out.emplace_back(p.name);
  return out;
}

}  // namespace amcrn::presets
