#include "mono/spin.hpp"

#include "mono/error.hpp"

namespace mono {

SpinConfig::SpinConfig(std::vector<std::int8_t> sigma) : sigma_(std::move(sigma)) {
  for (auto s : sigma_) {
    if (s == 1) ++plus_;
    else if (s != -1) throw DomainError("spin values must be +1 or -1");
  }
}

SpinConfig SpinConfig::all_plus(int n) {
  return SpinConfig(std::vector<std::int8_t>(static_cast<std::size_t>(n), 1));
}

SpinConfig SpinConfig::from_mask(int n, std::uint64_t mask) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? 1 : -1;
  return SpinConfig(std::move(s));
}

void SpinConfig::flip(int i) {
  auto& s = sigma_[static_cast<std::size_t>(i)];
  plus_ += s == 1 ? -1 : 1;
  s = static_cast<std::int8_t>(-s);
}

SpinConfig SpinConfig::negated() const {
  SpinConfig out = *this;
  for (auto& s : out.sigma_) s = static_cast<std::int8_t>(-s);
  out.plus_ = n() - plus_;
  return out;
}

}  // namespace mono
