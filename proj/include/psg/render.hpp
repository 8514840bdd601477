#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psg/generator.hpp"
#include "psg/raster.hpp"

namespace psg {

constexpr int kDefaultKhatDepth = 14;

/// Sequence gamma_1, gamma_2, ... of generator indices for the skew product.
class FiberSequence {
 public:
  enum class Rule { Explicit, Periodic, RandomSeeded };

  static FiberSequence explicit_sequence(std::vector<std::size_t> indices);
  /// The pattern repeated up to length n.
  static FiberSequence periodic(std::vector<std::size_t> pattern, std::size_t n);
  /// n uniform draws from {0..m-1} with a 64-bit Mersenne twister.
  static FiberSequence random(std::size_t m, std::size_t n, std::uint64_t seed);

  const std::vector<std::size_t>& indices() const noexcept { return idx_; }
  std::size_t size() const noexcept { return idx_.size(); }
  Rule rule() const noexcept { return rule_; }
  std::size_t period() const noexcept { return period_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t occurrences(std::size_t generator) const noexcept;
  /// Throws std::invalid_argument when an index is not below m.
  void validate(std::size_t m) const;

 private:
  std::vector<std::size_t> idx_;
  Rule rule_ = Rule::Explicit;
  std::size_t period_ = 0;
  std::uint64_t seed_ = 0;
};

/// Closed disk D(center, radius).
struct TrapDisk {
  Complex center;
  double radius = 0.0;
  bool contains(Complex z) const noexcept {
    const double dx = z.real() - center.real(), dy = z.imag() - center.imag();
    return dx * dx + dy * dy <= radius * radius;
  }
};

/// Disk D(h(c), rho) containing h(D(c, r)), from the Taylor expansion of each
/// chain factor at the current center.
TrapDisk image_disk_bound(const Generator& h, const TrapDisk& d);

/// A family of closed disks whose union is mapped into itself by every
/// generator: each disk's image bound lies in some disk of the family. Orbits
/// entering the union stay bounded forever, so renderers may stop there.
/// Candidates are centered at the given points, radii shrink geometrically
/// until the family is self-consistent; disks that never fit are dropped.
std::vector<TrapDisk> find_trap_disks(const GeneratorSet& gs, std::span<const Complex> centers, double radius_cap);
/// Centers taken from the postcritical orbit samples plus the origin.
std::vector<TrapDisk> find_trap_disks(const GeneratorSet& gs);

/// Default radius for the all-words renderers, 2 * max escape radius.
double default_render_radius(const GeneratorSet& gs);

/// Filled Julia set of one map: Bounded iff |h^k(z)| <= R for k <= maxiter.
Raster escape_raster(const Generator& h, const Viewport& vp, int maxiter, double R);

/// Over-approximation of the smallest filled-in Julia set: Bounded iff no word
/// of length <= depth sends the pixel center beyond R. Escaped(k) reports the
/// length of the first escaping word found in lexicographic order.
Raster khat_raster(const GeneratorSet& gs, const Viewport& vp, int depth, double R);

/// Filled fiberwise Julia set for the prefix gamma.
Raster fiber_raster(const GeneratorSet& gs, const FiberSequence& gamma, const Viewport& vp, double R);

/// Pixel approximation of J(G). A pixel is Boundary iff some word w of
/// length depth keeps the pixel center within R while some 4-neighbour pixel
/// center leaves it, i.e. the stencil straddles the level curve of w. Other
/// pixels are Bounded when some word of full length keeps the center within R,
/// Escaped otherwise.
Raster julia_raster(const GeneratorSet& gs, const Viewport& vp, int depth, double R);

/// Bounded pixels with an Escaped 4-neighbour become Boundary.
Raster boundary_extract(const Raster& r);

/// Repelling fixed points of h (|h'| > 1), most repelling first.
std::vector<Complex> repelling_fixed_points(const Generator& h);

/// Chaos game on inverse branches started at a repelling fixed point of
/// generator 0: a uniform generator and a uniform root at every chain factor.
PointCloud backward_sample(const GeneratorSet& gs, std::size_t n_points, std::size_t burn_in, std::uint64_t seed);

}  // namespace psg
