#pragma once

#include <cstddef>
#include <vector>

namespace amcrn {

/// Target bit error rate of the MQAM link. 0 < ber < 0.2 so that the power gap
/// stays positive and finite.
class BerTarget {
 public:
  /// Throws DomainError outside (0, 0.2).
  explicit BerTarget(double ber);

  double value() const noexcept { return ber_; }

 private:
  double ber_;
};

/// Constellation sizes M_0..M_{N-1}: M_0 = 0 (silent), M_1 = 2, M_j = 4^(j-1).
struct ConstellationLadder {
  std::vector<int> sizes;

  /// Number of fading regions, including the silent region 0.
  std::size_t regions() const noexcept { return sizes.size(); }
};

enum class RateKind { kContinuous, kDiscrete };

class ModulationScheme {
 public:
  static ModulationScheme continuous(BerTarget ber);
  /// Throws DomainError if the ladder has fewer than three regions or is malformed.
  static ModulationScheme discrete(ConstellationLadder ladder, BerTarget ber);

  RateKind kind() const noexcept { return kind_; }
  bool is_discrete() const noexcept { return kind_ == RateKind::kDiscrete; }
  const ConstellationLadder& ladder() const noexcept { return ladder_; }
  const BerTarget& ber() const noexcept { return ber_; }
  /// Power gap K for this BER target.
  double gap() const noexcept { return gap_; }

 private:
  ModulationScheme(RateKind kind, ConstellationLadder ladder, BerTarget ber);

  RateKind kind_;
  ConstellationLadder ladder_;
  BerTarget ber_;
  double gap_;
};

/// K = -1.5 / ln(5 BER).
double power_gap(BerTarget ber);

/// M(gamma) = 1 + K gamma P/Pbar for continuous-rate MQAM.
double cr_constellation(double gamma, double power_ratio, double gap);

/// Ladder with n_regions entries; only 3, 4 and 5 are supported.
ConstellationLadder dr_ladder(int n_regions);

/// Region entry points gamma* M_j for j = 1..N-1, followed by +infinity.
/// Region j covers [boundaries[j-1], boundaries[j]).
std::vector<double> region_boundaries(const ConstellationLadder& ladder, double gamma_star);

/// Index of the region containing gamma (0 = no transmission). A gamma equal to
/// a boundary belongs to the higher region.
std::size_t region_index(const ConstellationLadder& ladder, double gamma_star, double gamma);

}  // namespace amcrn
