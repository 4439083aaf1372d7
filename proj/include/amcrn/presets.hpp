#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace amcrn::presets {

/// A bundled scenario file reproducing one of the published figures.
struct Preset {
  std::string_view name;
  std::string_view text;
};

/// All presets, sorted by name.
const std::vector<Preset>& all();

/// Throws ValidationError naming the preset when it does not exist.
const Preset& find(std::string_view name);

std::vector<std::string> names();

namespace detail {
const std::vector<Preset>& embedded();
}  // namespace detail

}  // namespace amcrn::presets
