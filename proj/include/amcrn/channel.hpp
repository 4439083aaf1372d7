#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace amcrn {

/// Any fading law of the received SNR usable by the analysis modules.
template <typename D>
concept SnrDistribution = requires(const D& d, double g) {
  { d.mean() } -> std::convertible_to<double>;
  { d.pdf(g) } -> std::convertible_to<double>;
  { d.cdf(g) } -> std::convertible_to<double>;
  { d.ccdf(g) } -> std::convertible_to<double>;
  { d.quantile(g) } -> std::convertible_to<double>;
};

/// Received SNR under Rayleigh fading: exponential with mean gamma_bar (linear).
class RayleighChannel {
 public:
  /// Throws DomainError unless gamma_bar > 0.
  explicit RayleighChannel(double gamma_bar);

  double mean() const noexcept { return gamma_bar_; }

  // All three throw DomainError for gamma < 0.
  double pdf(double gamma) const;
  double cdf(double gamma) const;
  double ccdf(double gamma) const;  // 1 - cdf, exact in the tail

  /// Inverse CDF, u in [0, 1).
  double quantile(double u) const;

 private:
  double gamma_bar_;
};

static_assert(SnrDistribution<RayleighChannel>);

/// Uniform variates on the open interval (0, 1) from a 64-bit Mersenne twister.
/// The mapping from raw bits is fixed here so sequences are identical across
/// standard libraries.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Reproducible i.i.d. SNR draws by inverse-CDF sampling. Single consumer.
class ChannelSampleStream {
 public:
  ChannelSampleStream(RayleighChannel channel, std::uint64_t seed)
      : channel_(channel), uniform_(seed) {}

  const RayleighChannel& channel() const noexcept { return channel_; }

  double next() { return channel_.quantile(uniform_.next()); }

  /// Throws DomainError for n < 1.
  std::vector<double> sample(std::size_t n);

 private:
  RayleighChannel channel_;
  UniformStream uniform_;
};

}  // namespace amcrn
