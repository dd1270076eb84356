#pragma once

#include <span>
#include <string_view>

#include "fracsemi/alpha.hpp"
#include "fracsemi/function.hpp"

namespace fracsemi {

/// Parameters shared by the built-in profiles; each profile reads only its own.
struct ProfileParams {
  double p = 1.0;      ///< power: t^p
  double c = 1.0;      ///< constant: c
  double mu = 0.0;     ///< gaussian centre
  double sigma = 1.0;  ///< gaussian width
};

/// Names accepted by make_profile, sorted.
std::span<const std::string_view> profile_names();
bool is_profile_name(std::string_view name);

/// Built-in functions: "constant" (c), "cos_alpha", "exp_alpha", "exp_decay" (e^{-x}),
/// "gaussian" (exp(-(x-mu)^2 / (2 sigma^2))), "power" (t^p), "sin_alpha".
/// The *_alpha profiles use the given order. Throws DomainError for an unknown name.
FunctionHandle make_profile(std::string_view name, const ProfileParams& params,
                            AlphaOrder alpha, Domain domain = {});

}  // namespace fracsemi
