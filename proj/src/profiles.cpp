#include "fracsemi/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fracsemi/conformable.hpp"

namespace fracsemi {
namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "constant", "cos_alpha", "exp_alpha", "exp_decay", "gaussian", "power", "sin_alpha",
};

}  // namespace

std::span<const std::string_view> profile_names() { return kNames; }

bool is_profile_name(std::string_view name) {
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

FunctionHandle make_profile(std::string_view name, const ProfileParams& params,
                            AlphaOrder alpha, Domain domain) {
  if (name == "constant") {
    return {[c = params.c](double) { return c; }, domain};
  }
  if (name == "power") {
    return {[p = params.p](double t) { return std::pow(t, p); }, domain};
  }
  if (name == "exp_alpha") {
    return {[alpha](double t) { return ref_exp_alpha(t, alpha); }, domain};
  }
  if (name == "sin_alpha") {
    return {[alpha](double t) { return ref_sin_alpha(t, alpha); }, domain};
  }
  if (name == "cos_alpha") {
    return {[alpha](double t) { return ref_cos_alpha(t, alpha); }, domain};
  }
  if (name == "exp_decay") {
    return {[](double x) { return std::exp(-x); }, domain};
  }
  if (name == "gaussian") {
    if (!(params.sigma > 0.0)) throw DomainError("gaussian sigma must be > 0");
    return {[mu = params.mu, sigma = params.sigma](double x) {
              const double z = (x - mu) / sigma;
              return std::exp(-0.5 * z * z);
            },
            domain};
  }
  throw DomainError("unknown profile '" + std::string(name) + "'");
}

}  // namespace fracsemi
