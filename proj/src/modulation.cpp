#include "amcrn/modulation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "amcrn/errors.hpp"

namespace amcrn {

BerTarget::BerTarget(double ber) : ber_(ber) {
  if (!(ber > 0.0) || !(5.0 * ber < 1.0)) {
    throw DomainError("BER target must satisfy 0 < ber < 0.2, got " + std::to_string(ber));
  }
}

ModulationScheme::ModulationScheme(RateKind kind, ConstellationLadder ladder, BerTarget ber)
    : kind_(kind), ladder_(std::move(ladder)), ber_(ber), gap_(power_gap(ber)) {}

ModulationScheme ModulationScheme::continuous(BerTarget ber) {
  return ModulationScheme(RateKind::kContinuous, {}, ber);
}

ModulationScheme ModulationScheme::discrete(ConstellationLadder ladder, BerTarget ber) {
  const auto& m = ladder.sizes;
  if (m.size() < 3 || m[0] != 0 || m[1] != 2) {
    throw DomainError("discrete ladder must start {0, 2, ...} with at least 3 regions");
  }
  for (std::size_t j = 2; j < m.size(); ++j) {
    if (m[j] != 1 << (2 * (j - 1))) throw DomainError("ladder entries must be M_j = 4^(j-1)");
  }
  return ModulationScheme(RateKind::kDiscrete, std::move(ladder), ber);
}

double power_gap(BerTarget ber) { return -1.5 / std::log(5.0 * ber.value()); }

double cr_constellation(double gamma, double power_ratio, double gap) {
  return 1.0 + gap * gamma * power_ratio;
}

ConstellationLadder dr_ladder(int n_regions) {
  if (n_regions < 3 || n_regions > 5) {
    throw UnsupportedLadder("only 3, 4 or 5 fading regions are supported, got " +
                            std::to_string(n_regions));
  }
  ConstellationLadder ladder;
  ladder.sizes.push_back(0);
  ladder.sizes.push_back(2);
  for (int j = 2; j < n_regions; ++j) ladder.sizes.push_back(1 << (2 * (j - 1)));
  return ladder;
}

std::vector<double> region_boundaries(const ConstellationLadder& ladder, double gamma_star) {
  std::vector<double> bounds;
  bounds.reserve(ladder.sizes.size());
  for (std::size_t j = 1; j < ladder.sizes.size(); ++j) {
    bounds.push_back(gamma_star * ladder.sizes[j]);
  }
  bounds.push_back(std::numeric_limits<double>::infinity());
  return bounds;
}

std::size_t region_index(const ConstellationLadder& ladder, double gamma_star, double gamma) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < ladder.sizes.size(); ++i) {
    if (gamma >= gamma_star * ladder.sizes[i]) j = i;
  }
  return j;
}

}  // namespace amcrn
