#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psg/generator.hpp"
#include "psg/raster.hpp"

namespace psg {

/// Connected components of one pixel class. labels[y * width + x] is the
/// component id or -1 for pixels outside the class.
struct ComponentMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  std::vector<std::size_t> sizes;
  std::vector<bool> touches_frame;

  std::size_t count() const noexcept { return sizes.size(); }
  int label(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Components numbered in raster scan order of their first pixel.
ComponentMap label_components(std::span<const std::uint8_t> mask, int width, int height, int connectivity);
ComponentMap label_components(const Raster& r, CellKind cls, int connectivity);

enum class Order { Less, Greater, Incomparable, Equal };
char order_symbol(Order o) noexcept;  // L G I E

struct OrderResult {
  Order order = Order::Incomparable;
  /// A frame-touching component took part, so surrounding is unreliable.
  bool truncated = false;
};

/// a < b iff a lies in a bounded complementary component of b. The frame flood
/// runs over the complement of b dilated by one pixel.
OrderResult surrounding_order(int a, int b, const ComponentMap& cm);

/// Caches one frame-reachability map per component so all pairs cost one flood
/// per component.
class SurroundingOracle {
 public:
  explicit SurroundingOracle(const ComponentMap& cm);
  /// b surrounds a.
  bool surrounded_by(int a, int b);
  OrderResult order(int a, int b);

 private:
  const std::vector<bool>& reach(int b);

  const ComponentMap& cm_;
  std::vector<std::vector<bool>> reach_;
  std::vector<bool> done_;
  std::vector<std::size_t> first_pixel_;
};

struct TotalityReport {
  bool total = true;
  bool truncated = false;
  std::vector<std::pair<int, int>> incomparable_pairs;
  /// matrix[a][b] = order of a relative to b.
  std::vector<std::vector<Order>> matrix;
};

TotalityReport order_totality(const ComponentMap& cm);

/// Reflexive/antisymmetric/transitive check of an order matrix.
struct OrderLaws {
  bool antisymmetric = true;
  bool transitive = true;
};
OrderLaws check_order_laws(const std::vector<std::vector<Order>>& matrix);

class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least and greatest components; throws OrderError when the order is not total.
std::pair<int, int> min_max_components(const ComponentMap& cm);
std::pair<int, int> min_max_components(const TotalityReport& rep);

/// Ordered pixel loop extracted from the Boundary cells of a raster after
/// thinning.
struct CurveTrace {
  std::vector<Complex> points;
  bool closed = false;
  std::size_t components = 0;
  std::size_t branch_pixels = 0;
  std::size_t end_pixels = 0;
  /// Spurs of at most kMaxSpurPixels removed before tracing.
  std::size_t pruned_spurs = 0;
  double pixel_size = 0.0;
  std::string diagnostic;
};

/// Longest dangling chain, in pixels, that counts as discretization noise.
constexpr int kMaxSpurPixels = 2;

/// Zhang-Suen thinning of a binary mask, in place.
void thin(std::vector<std::uint8_t>& mask, int width, int height);

/// Deletes chains of at most max_len pixels running from an end pixel to a
/// branch pixel. Free-standing arcs are kept. Returns the number removed.
std::size_t prune_spurs(std::vector<std::uint8_t>& mask, int width, int height, int max_len = kMaxSpurPixels);

/// Thins, prunes spurs, then walks the curve holding the first pixel.
CurveTrace trace_curve(std::span<const std::uint8_t> mask, const Viewport& vp);
CurveTrace trace_curve(const Raster& r);

/// "re,im" polyline; a closed loop repeats its first point at the end.
std::string encode_curve_csv(const CurveTrace& t);

/// Single closed cycle, every pixel of degree two.
bool jordan_heuristic(const CurveTrace& t);

/// Max over sampled pairs (z1, z2) of the smaller arc's extent, measured as the
/// largest distance from z1 along the arc, divided by |z1 - z2|. Anchors are
/// spread evenly along the loop; every other loop point is a partner.
/// Pairs closer than min_chord_px pixels are skipped.
double quasicircle_ratio(const CurveTrace& t, int n_pairs, double min_chord_px = 2.0);

struct AreaScaling {
  double slope = 0.0;
  std::vector<double> log_pixel_size;
  std::vector<double> log_area;
};

/// Least-squares slope of log(area of class cls) against log(pixel size).
AreaScaling area_scaling(std::span<const Raster> rs, CellKind cls = CellKind::Boundary);

struct StabilitySetting {
  int res = 512;
  int depth = 12;
};

struct StabilityReport {
  std::vector<StabilitySetting> settings;
  std::vector<std::size_t> counts;
  bool stable = false;
  std::size_t stable_count = 0;
};

/// Component counts of the J(G) pixel approximation over the settings, in
/// order; stable when the last two agree.
StabilityReport component_count_stability(const GeneratorSet& gs, const Viewport& base,
                                          std::span<const StabilitySetting> settings);

/// Components of the julia_raster approximation with 8-connectivity.
std::size_t julia_component_count(const Raster& r);

}  // namespace psg
