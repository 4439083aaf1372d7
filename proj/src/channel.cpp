#include "amcrn/channel.hpp"

#include <cmath>

#include "amcrn/errors.hpp"

namespace amcrn {

namespace {

void require_non_negative(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("SNR must be non-negative");
}

}  // namespace

RayleighChannel::RayleighChannel(double gamma_bar) : gamma_bar_(gamma_bar) {
  if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar)) {
    throw DomainError("RayleighChannel: mean SNR must be positive and finite");
  }
}

double RayleighChannel::pdf(double gamma) const {
  require_non_negative(gamma);
  return std::exp(-gamma / gamma_bar_) / gamma_bar_;
}

double RayleighChannel::cdf(double gamma) const {
  require_non_negative(gamma);
  return -std::expm1(-gamma / gamma_bar_);
}

double RayleighChannel::ccdf(double gamma) const {
  require_non_negative(gamma);
  return std::exp(-gamma / gamma_bar_);
}

double RayleighChannel::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in [0, 1)");
  return -gamma_bar_ * std::log1p(-u);
}

std::vector<double> ChannelSampleStream::sample(std::size_t n) {
  if (n < 1) throw DomainError("sample: n must be at least 1");
  std::vector<double> out(n);
  for (auto& g : out) g = next();
  return out;
}

}  // namespace amcrn
