#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digs/config.hpp"

namespace digs {

struct Preset {
  std::string name;
  std::string description;
  RunConfig config;
};

// fig1-red, fig1-blue, fig1-purple, fig2, fig3, fig4-1 ... fig4-6.
const std::vector<Preset>& presets();
std::optional<RunConfig> find_preset(std::string_view name);

}  // namespace digs
