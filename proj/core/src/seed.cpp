#include "mono/seed.hpp"

namespace mono {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed Seed::child(std::uint64_t sub) const {
  return Seed{mix64(master ^ mix64(stream + 0x632be59bd9b4e019ULL)), sub};
}

Engine make_engine(const Seed& seed) {
  const std::uint64_t a = mix64(seed.master);
  const std::uint64_t b = mix64(a ^ mix64(seed.stream ^ 0xd1b54a32d192ed03ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Engine(seq);
}

}  // namespace mono
