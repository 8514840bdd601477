#include "psg/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>
#include <stdexcept>

#ifdef PSG_HAVE_PNG
#include <png.h>
#endif

namespace psg {

Viewport::Viewport(Complex c, double w, double h, int pw, int ph) : center(c), width(w), height(h), px_w(pw), px_h(ph) {
  if (!(w > 0.0) || !(h > 0.0)) throw std::invalid_argument("viewport extents must be positive");
  if (pw < 16 || ph < 16) throw std::invalid_argument("viewport needs at least 16 pixels per side");
}

Viewport Viewport::square(Complex c, double half_width, int res) {
  return Viewport(c, 2.0 * half_width, 2.0 * half_width, res, res);
}

Complex Viewport::pixel_center(int x, int y) const noexcept {
  const double re = center.real() - 0.5 * width + (x + 0.5) * pixel_width();
  const double im = center.imag() + 0.5 * height - (y + 0.5) * pixel_height();
  return {re, im};
}

bool Viewport::pixel_of(Complex z, int& x, int& y) const noexcept {
  const double fx = (z.real() - (center.real() - 0.5 * width)) / pixel_width();
  const double fy = ((center.imag() + 0.5 * height) - z.imag()) / pixel_height();
  if (!(fx >= 0.0 && fx < px_w && fy >= 0.0 && fy < px_h)) return false;
  x = static_cast<int>(fx);
  y = static_cast<int>(fy);
  return true;
}

Raster::Raster(Viewport vp, RasterMeta meta)
    : vp_(vp), meta_(std::move(meta)), cells_(static_cast<std::size_t>(vp.px_w) * vp.px_h) {}

std::size_t Raster::count(CellKind k) const noexcept {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [k](const Cell& c) { return c.kind == k; }));
}

std::vector<std::uint8_t> class_mask(const Raster& r, CellKind k) {
  std::vector<std::uint8_t> m(r.cells().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = r.cells()[i].kind == k ? 1 : 0;
  return m;
}

std::uint8_t cell_byte(const Cell& c, int depth) noexcept {
  switch (c.kind) {
    case CellKind::Bounded: return 0;
    case CellKind::Boundary: return 128;
    case CellKind::Escaped: break;
  }
  const int span = std::max(1, depth - 1);
  const int k = std::clamp(c.step - 1, 0, span);
  return static_cast<std::uint8_t>(255 - (126 * k) / span);
}

namespace {

std::string header_comments(const Raster& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  const Viewport& vp = r.viewport();
  os << "# psg viewport " << vp.center.real() << ' ' << vp.center.imag() << ' ' << vp.width << ' ' << vp.height << '\n';
  os << "# psg meta " << (r.meta().algorithm.empty() ? "-" : r.meta().algorithm) << ' ' << r.meta().depth << ' '
     << r.meta().radius << '\n';
  return os.str();
}

std::vector<std::uint8_t> bytes_of(const Raster& r) {
  std::vector<std::uint8_t> out(r.cells().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cell_byte(r.cells()[i], r.meta().depth);
  return out;
}

}  // namespace

std::string encode_pgm(const Raster& r) {
  std::string s = "P5\n" + header_comments(r) + std::to_string(r.width()) + ' ' + std::to_string(r.height()) + "\n255\n";
  const auto px = bytes_of(r);
  s.append(px.begin(), px.end());
  return s;
}

Raster decode_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  auto fail = [](const std::string& what) { throw std::runtime_error("PGM: " + what); };
  auto next_token = [&](bool allow_comments, std::vector<std::string>* comments) {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#' && allow_comments) {
        const std::size_t eol = bytes.find('\n', pos);
        if (comments) comments->push_back(bytes.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
        pos = eol == std::string::npos ? bytes.size() : eol + 1;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  std::vector<std::string> comments;
  if (next_token(false, nullptr) != "P5") fail("not a binary PGM");
  int w = 0, h = 0, maxv = 0;
  try {
    w = std::stoi(next_token(true, &comments));
    h = std::stoi(next_token(true, &comments));
    maxv = std::stoi(next_token(true, &comments));
  } catch (const std::exception&) {
    fail("bad header");
  }
  if (maxv != 255) fail("expected maxval 255");
  ++pos;  // single whitespace after maxval
  if (pos + static_cast<std::size_t>(w) * h > bytes.size()) fail("truncated pixel data");

  Viewport vp(Complex{0.0, 0.0}, static_cast<double>(w), static_cast<double>(h), w, h);
  RasterMeta meta;
  for (const std::string& c : comments) {
    std::istringstream is(c);
    std::string hash, tag, kind;
    is >> hash >> tag >> kind;
    if (tag != "psg") continue;
    if (kind == "viewport") {
      double cx, cy, vw, vh;
      if (is >> cx >> cy >> vw >> vh) vp = Viewport(Complex{cx, cy}, vw, vh, w, h);
    } else if (kind == "meta") {
      is >> meta.algorithm >> meta.depth >> meta.radius;
      if (meta.algorithm == "-") meta.algorithm.clear();
    }
  }
  Raster r(vp, meta);
  const int span = std::max(1, meta.depth - 1);
  for (std::size_t i = 0; i < r.cells().size(); ++i) {
    const auto b = static_cast<std::uint8_t>(bytes[pos + i]);
    Cell& c = r.cells()[i];
    if (b == 0) {
      c = {CellKind::Bounded, 0};
    } else if (b == 128) {
      c = {CellKind::Boundary, 0};
    } else {
      const int k = b > 128 ? ((255 - b) * span + 63) / 126 : span;
      c = {CellKind::Escaped, k + 1};
    }
  }
  return r;
}

void write_pgm(const Raster& r, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const std::string s = encode_pgm(r);
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Raster read_pgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_pgm(s);
}

bool png_supported() noexcept {
#ifdef PSG_HAVE_PNG
  return true;
#else
  return false;
#endif
}

void write_png(const Raster& r, const std::string& path) {
#ifdef PSG_HAVE_PNG
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("libpng failure writing " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(r.width()), static_cast<png_uint_32>(r.height()), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  auto px = bytes_of(r);
  for (int y = 0; y < r.height(); ++y) png_write_row(png, px.data() + static_cast<std::size_t>(y) * r.width());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
#else
  (void)r;
  throw std::runtime_error("PNG output unavailable (built without libpng): " + path);
#endif
}

std::string encode_csv(const PointCloud& pc) {
  std::ostringstream os;
  os << std::setprecision(17) << "re,im\n";
  for (Complex z : pc.points) os << z.real() << ',' << z.imag() << '\n';
  return os.str();
}

void write_csv(const PointCloud& pc, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << encode_csv(pc);
}

}  // namespace psg
