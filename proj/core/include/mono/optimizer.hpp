#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mono/random_models.hpp"
#include "mono/seed.hpp"
#include "mono/spin.hpp"
#include "mono/subgraph.hpp"

namespace mono {

// Flat r-uniform instance with per-vertex incidence lists; the common input
// of every optimiser. Built from an F-hypergraph or a copy list (only the
// vertex sets of the hyperedges matter for H).
class HyperInstance {
 public:
  HyperInstance(int n, int r, std::vector<int> members);
  explicit HyperInstance(const FHypergraph& h);
  explicit HyperInstance(const CopyList& c);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  std::size_t size() const noexcept { return m_; }
  std::span<const int> edge(std::size_t e) const {
    return std::span<const int>(members_).subspan(e * static_cast<std::size_t>(r_),
                                                  static_cast<std::size_t>(r_));
  }
  std::span<const std::uint32_t> incident(int v) const;

 private:
  int n_;
  int r_;
  std::size_t m_;
  std::vector<int> members_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

// Allowed plus counts [min_plus, max_plus] of sigma.
struct MagnetizationBand {
  int min_plus = 0;
  int max_plus = 0;

  // sum(sigma) in {0} for even n, {-1, +1} for odd n.
  static MagnetizationBand balanced(int n);
  // |sum(sigma)| <= h0 * n.
  static MagnetizationBand from_h0(int n, double h0);

  bool contains(int plus) const noexcept { return plus >= min_plus && plus <= max_plus; }
};

enum class Method { exact, anneal, swap_anneal };
std::string to_string(Method m);

struct OptResult {
  SpinConfig best_sigma;
  std::int64_t best_value = 0;  // monochromatic count
  Method method = Method::exact;
  std::uint64_t evaluations = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
  bool certified = false;  // true only for exhaustive search
};

struct AnnealConfig {
  int restarts = 16;
  std::int64_t steps_per_restart = 0;  // 0: 200 n
  double initial_temperature = 0.0;    // 0: 2 x mean |flip delta| over 100 random flips
  double cooling_ratio = 0.999;        // per step
  Seed seed{};
  unsigned threads = 1;                // 0: hardware concurrency
};

inline constexpr int kMaxExactVertices = 28;
inline constexpr std::uint64_t kMaxExactSliceConfigs = 10'000'000;

// Edge 2-colourings of K_n as a bipartition problem: one vertex per edge of
// K_n (colex order of the pair) and one hyperedge per triangle, so that H
// counts monochromatic triangles of the colouring (Goodman's setting).
HyperInstance edge_triangle_instance(int n);

std::int64_t hamiltonian(const HyperInstance& h, const SpinConfig& sigma);
std::int64_t cut_value(const HyperInstance& h, const SpinConfig& sigma);
std::int64_t cut_value(const FHypergraph& h, const SpinConfig& sigma);

// H(sigma with v flipped) - H(sigma), from v's incident hyperedges only.
std::int64_t flip_delta(const HyperInstance& h, const SpinConfig& sigma, int v);

// Global minimum of H over {-1,1}^n or over the slices in `band`.
OptResult minimize_exact(const HyperInstance& h,
                         const std::optional<MagnetizationBand>& band = std::nullopt);

// Best-of-restarts simulated annealing; an upper bound on the minimum.
// Single-spin flips when unconstrained, (+,-) swaps inside the band.
OptResult minimize_anneal(const HyperInstance& h, const AnnealConfig& cfg,
                          const std::optional<MagnetizationBand>& band = std::nullopt);

}  // namespace mono
