#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mono/rational.hpp"

namespace mono {

// sigma in {-1,+1}^n with its plus count kept in sync.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> sigma);

  static SpinConfig all_plus(int n);
  // Bit i of `mask` set means sigma_i = +1.
  static SpinConfig from_mask(int n, std::uint64_t mask);

  int n() const noexcept { return static_cast<int>(sigma_.size()); }
  int operator[](int i) const { return sigma_[static_cast<std::size_t>(i)]; }
  std::span<const std::int8_t> values() const noexcept { return sigma_; }
  int plus_count() const noexcept { return plus_; }
  // Sum of spins, 2 * plus_count - n.
  int spin_sum() const noexcept { return 2 * plus_ - n(); }
  Rational magnetization() const { return Rational(spin_sum(), n()); }

  void flip(int i);
  SpinConfig negated() const;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
  friend auto operator<=>(const SpinConfig& a, const SpinConfig& b) {
    return a.sigma_ <=> b.sigma_;
  }

 private:
  std::vector<std::int8_t> sigma_;
  int plus_ = 0;
};

}  // namespace mono
