#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psg/polynomial.hpp"

namespace psg {

struct Viewport {
  Complex center{0.0, 0.0};
  double width = 4.0;
  double height = 4.0;
  int px_w = 256;
  int px_h = 256;

  Viewport() = default;
  Viewport(Complex c, double w, double h, int pw, int ph);
  /// Square viewport covering [c - half, c + half]^2 at res x res pixels.
  static Viewport square(Complex c, double half_width, int res);

  double pixel_width() const noexcept { return width / px_w; }
  double pixel_height() const noexcept { return height / px_h; }
  /// Complex coordinate of the center of pixel (x, y); row 0 is the top edge.
  Complex pixel_center(int x, int y) const noexcept;
  /// Pixel containing z; false when z is outside the viewport.
  bool pixel_of(Complex z, int& x, int& y) const noexcept;
  friend bool operator==(const Viewport&, const Viewport&) = default;
};

enum class CellKind : std::uint8_t { Bounded = 0, Escaped = 1, Boundary = 2 };

struct Cell {
  CellKind kind = CellKind::Bounded;
  /// First step at which the orbit left the radius; 0 unless Escaped.
  std::int32_t step = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct RasterMeta {
  std::string algorithm;
  int depth = 0;
  double radius = 0.0;
};

class Raster {
 public:
  Raster() = default;
  Raster(Viewport vp, RasterMeta meta);

  const Viewport& viewport() const noexcept { return vp_; }
  const RasterMeta& meta() const noexcept { return meta_; }
  int width() const noexcept { return vp_.px_w; }
  int height() const noexcept { return vp_.px_h; }

  Cell& at(int x, int y) { return cells_[static_cast<std::size_t>(y) * vp_.px_w + x]; }
  const Cell& at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * vp_.px_w + x]; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::vector<Cell>& cells() noexcept { return cells_; }

  std::size_t count(CellKind k) const noexcept;

 private:
  Viewport vp_;
  RasterMeta meta_;
  std::vector<Cell> cells_;
};

/// Binary mask helper: mask[y * w + x] != 0 marks a pixel of the chosen class.
std::vector<std::uint8_t> class_mask(const Raster& r, CellKind k);

/// PGM (P5) bytes: 0 Bounded, 128 Boundary, 129..255 Escaped (255 = first step).
std::uint8_t cell_byte(const Cell& c, int depth) noexcept;
std::string encode_pgm(const Raster& r);
Raster decode_pgm(const std::string& bytes);
void write_pgm(const Raster& r, const std::string& path);
Raster read_pgm(const std::string& path);
/// Grayscale PNG with the same byte mapping; throws when built without libpng.
void write_png(const Raster& r, const std::string& path);
bool png_supported() noexcept;

struct PointCloud {
  std::vector<Complex> points;
  std::size_t history_length = 0;
  std::uint64_t seed = 0;
};

std::string encode_csv(const PointCloud& pc);
void write_csv(const PointCloud& pc, const std::string& path);

}  // namespace psg
