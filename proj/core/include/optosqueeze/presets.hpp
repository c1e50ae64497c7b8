#pragma once

// Named parameter sets and the figure presets that regenerate each dataset.

#include <span>
#include <string>
#include <string_view>

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze {

/// Laboratory defaults: 10 nW red tone, no blue tone, T = 10 mK.
[[nodiscard]] PhysicalParams device_baseline();

/// Lambda = 0.4 kappa, phi = 0, G- = 0.2 kappa, G+ = 0.1 kappa, gamma = 6.67e-6 kappa.
[[nodiscard]] PhysicalParams reference_params();

/// "appendixC" or "baseline". Throws UsageError otherwise.
[[nodiscard]] PhysicalParams named_params(std::string_view name);
[[nodiscard]] std::span<const std::string_view> param_set_names();

/// Throws UsageError listing the valid names for an unknown preset.
[[nodiscard]] SweepSpec figure_preset(std::string_view name);
[[nodiscard]] std::span<const std::string_view> preset_names();

}  // namespace optosqueeze
