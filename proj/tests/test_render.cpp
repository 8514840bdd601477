#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "oracle.hpp"
#include "psg/affine.hpp"
#include "psg/parallel.hpp"
#include "psg/render.hpp"
#include "psg/topology.hpp"

using namespace psg;
using oracle::C;

namespace {

const Polynomial z2 = Polynomial::monomial(1.0, 2);
const Polynomial z2m1({C{-1.0}, C{0.0}, C{1.0}});
GeneratorSet sy() { return {Polynomial::monomial(1.0, 3), Polynomial::monomial(0.25, 2)}; }
GeneratorSet jb() {
  return GeneratorSet(std::vector<Generator>{Generator::iterate(z2m1, 2, "g1^2"), Generator::iterate(Polynomial::monomial(0.25, 2), 2, "g2^2")});
}

/// Cell of the pixel containing z.
Cell cell_at(const Raster& r, C z) {
  int x = 0, y = 0;
  REQUIRE(r.viewport().pixel_of(z, x, y));
  return r.at(x, y);
}

/// Odd pixel counts put a pixel center exactly on the viewport center.
Viewport odd_view(C c, double half, int res = 65) { return Viewport(c, 2 * half, 2 * half, res, res); }

}  // namespace

TEST_SUITE("render") {
  TEST_CASE("viewport geometry") {
    const Viewport vp = Viewport::square({1.0, -1.0}, 2.0, 64);
    CHECK(vp.pixel_width() == doctest::Approx(4.0 / 64));
    const C tl = vp.pixel_center(0, 0);
    CHECK(tl.real() < 1.0);
    CHECK(tl.imag() > -1.0);  // row 0 is the top edge
    int x = 0, y = 0;
    CHECK(vp.pixel_of(vp.pixel_center(10, 20), x, y));
    CHECK(x == 10);
    CHECK(y == 20);
    CHECK_FALSE(vp.pixel_of({10.0, 0.0}, x, y));
    CHECK_THROWS(Viewport({0.0, 0.0}, 1.0, 1.0, 8, 8));
    CHECK_THROWS(Viewport({0.0, 0.0}, -1.0, 1.0, 32, 32));
  }

  TEST_CASE("escape raster examples") {
    const Generator g(z2);
    const auto r = escape_raster(g, odd_view({0.0, 0.0}, 2.0), 50, 4.0);
    CHECK(cell_at(r, {0.5, 0.0}).kind == CellKind::Bounded);
    const Cell out = cell_at(r, {1.5, 0.0});
    CHECK(out.kind == CellKind::Escaped);
    CHECK(out.step <= 3);

    const auto r2 = escape_raster(Generator::iterate(z2m1, 2), odd_view({0.0, 0.0}, 2.0), 100, 8.0);
    CHECK(cell_at(r2, {0.0, 0.0}).kind == CellKind::Bounded);

    const Generator q(Polynomial::monomial(0.25, 2));
    const auto r3 = escape_raster(q, odd_view({3.9, 0.0}, 0.05), 200, 16.0);
    CHECK(cell_at(r3, {3.9, 0.0}).kind == CellKind::Bounded);
  }

  TEST_CASE("khat raster examples") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 2.0, 128);
    const auto r = khat_raster(sy(), vp, 14, default_render_radius(sy()));
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) {
        const double m = std::abs(vp.pixel_center(x, y));
        const bool bounded = r.at(x, y).kind == CellKind::Bounded;
        if (m < 0.98) CHECK(bounded);
        if (m > 1.02) CHECK_FALSE(bounded);
      }
    const auto j = khat_raster(jb(), odd_view({0.0, 0.0}, 6.0), 10, default_render_radius(jb()));
    CHECK(cell_at(j, {0.0, 0.0}).kind == CellKind::Bounded);
    CHECK(cell_at(j, {5.0, 0.0}).kind == CellKind::Escaped);
  }

  TEST_CASE("khat depth monotonicity") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 2.0, 64);
    const GeneratorSet gs{z2m1, Polynomial::monomial(0.3, 2)};
    const double R = default_render_radius(gs);
    Raster prev = khat_raster(gs, vp, 1, R);
    for (int d = 2; d <= 8; ++d) {
      const Raster cur = khat_raster(gs, vp, d, R);
      for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
          if (cur.at(x, y).kind == CellKind::Bounded) CHECK(prev.at(x, y).kind == CellKind::Bounded);
      prev = cur;
    }
  }

  TEST_CASE("fiber raster examples") {
    const GeneratorSet single{z2};
    const Viewport vp = Viewport::square({0.0, 0.0}, 1.5, 128);
    const auto r = boundary_extract(fiber_raster(single, FiberSequence::periodic({0}, 30), vp, 4.0));
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        if (r.at(x, y).kind == CellKind::Boundary)
          CHECK(std::abs(std::abs(vp.pixel_center(x, y)) - 1.0) <= 2.0 * vp.pixel_width());

    std::vector<std::size_t> g{1};
    for (int k = 0; k < 20; ++k) g.push_back(0);
    const Viewport v2 = Viewport::square({0.0, 0.0}, 3.0, 128);
    const auto r2 = boundary_extract(fiber_raster(sy(), FiberSequence::explicit_sequence(g), v2, 16.0));
    std::size_t n = 0;
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        if (r2.at(x, y).kind == CellKind::Boundary) {
          ++n;
          CHECK(std::abs(std::abs(v2.pixel_center(x, y)) - 2.0) <= 2.0 * v2.pixel_width());
        }
    CHECK(n > 100);

    const auto r3 = fiber_raster(jb(), FiberSequence::periodic({0, 1}, 24), Viewport::square({0.0, 0.0}, 2.5, 512), 16.0);
    CHECK(label_components(r3, CellKind::Bounded, 8).sizes.size() == 1);
  }

  TEST_CASE("constant fibers equal single-map escape rasters") {
    const Viewport vp = Viewport::square({0.1, 0.2}, 2.0, 96);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto a = fiber_raster(jb(), FiberSequence::periodic({i}, 12), vp, 16.0);
      const auto b = escape_raster(jb()[i], vp, 12, 16.0);
      for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x) CHECK(a.at(x, y) == b.at(x, y));
    }
  }

  TEST_CASE("fiber sequences") {
    const auto p = FiberSequence::periodic({0, 1, 1}, 7);
    CHECK(p.indices() == std::vector<std::size_t>{0, 1, 1, 0, 1, 1, 0});
    CHECK(p.occurrences(1) == 4);
    const auto a = FiberSequence::random(2, 24, 5), b = FiberSequence::random(2, 24, 5);
    CHECK(a.indices() == b.indices());
    CHECK(a.size() == 24);
    CHECK_THROWS(FiberSequence::explicit_sequence({}));
    CHECK_THROWS(FiberSequence::explicit_sequence({0, 2}).validate(2));
  }

  TEST_CASE("boundary extraction") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 1.5, 128);
    const auto disk = boundary_extract(escape_raster(Generator(z2), vp, 40, 4.0));
    std::size_t n = 0;
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        if (disk.at(x, y).kind == CellKind::Boundary) {
          ++n;
          CHECK(std::abs(std::abs(vp.pixel_center(x, y)) - 1.0) <= 1.5 * vp.pixel_width());
        }
    CHECK(n > 200);

    const auto full = boundary_extract(escape_raster(Generator(z2), Viewport::square({0.0, 0.0}, 0.5, 32), 40, 4.0));
    CHECK(full.count(CellKind::Boundary) == 0);

    const Viewport v2 = Viewport::square({0.0, 0.0}, 1.5, 192);
    const auto kb = boundary_extract(khat_raster(sy(), v2, 14, 16.0));
    for (int y = 0; y < 192; ++y)
      for (int x = 0; x < 192; ++x)
        if (kb.at(x, y).kind == CellKind::Boundary) CHECK(std::abs(std::abs(v2.pixel_center(x, y)) - 1.0) <= 2.0 * v2.pixel_width());
  }

  TEST_CASE("julia raster of the Cantor example stays in the annulus") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 4.4, 512);
    const auto r = julia_raster(sy(), vp, 12, default_render_radius(sy()));
    std::size_t n = 0;
    for (int y = 0; y < 512; ++y)
      for (int x = 0; x < 512; ++x)
        if (r.at(x, y).kind == CellKind::Boundary) {
          ++n;
          const double m = std::abs(vp.pixel_center(x, y));
          CHECK(m >= 1.0 - 2 * vp.pixel_width());
          CHECK(m <= 4.0 + 2 * vp.pixel_width());
        }
    CHECK(n > 1000);
  }

  TEST_CASE("trap disks are mapped into the trap union") {
    const auto disks = find_trap_disks(jb());
    REQUIRE_FALSE(disks.empty());
    bool has_origin = false;
    for (const TrapDisk& d : disks) has_origin = has_origin || std::abs(d.center) == 0.0;
    CHECK(has_origin);
    for (const TrapDisk& d : disks)
      for (const Generator& h : jb()) {
        const TrapDisk img = image_disk_bound(h, d);
        bool inside = false;
        for (const TrapDisk& e : disks) inside = inside || std::abs(img.center - e.center) + img.radius <= e.radius;
        CHECK(inside);
      }
  }

  TEST_CASE("repelling fixed points") {
    const auto fp = repelling_fixed_points(Generator(z2));
    REQUIRE(fp.size() == 1);
    CHECK(std::abs(fp[0] - C{1.0}) < 1e-12);
    for (C z : repelling_fixed_points(jb()[0])) {
      CHECK(std::abs(jb()[0].apply(z) - z) < 1e-9);
      CHECK(std::abs(jb()[0].derivative_at(z)) > 1.0);
    }
  }

  TEST_CASE("backward samples") {
    const auto a = backward_sample(GeneratorSet{z2}, 2000, 50, 1);
    CHECK(a.points.size() == 2000);
    for (C z : a.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);

    const auto b = backward_sample(sy(), 5000, 100, 2);
    const auto m = m_set(sy(), 14);
    for (C z : b.points) {
      CHECK(std::abs(z) >= 1.0 - 1e-6);
      CHECK(std::abs(z) <= 4.0 + 1e-6);
      CHECK(m.distance(std::log(std::abs(z))) <= 1e-3);
    }

    const auto c = backward_sample(sy(), 5000, 100, 2);
    CHECK(b.points == c.points);
  }

  TEST_CASE("backward samples of z^2 - 1 lie on the escape boundary") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 2.0, 512);
    const auto bd = boundary_extract(escape_raster(Generator(z2m1), vp, 300, 4.0));
    std::vector<C> pix;
    for (int y = 0; y < 512; ++y)
      for (int x = 0; x < 512; ++x)
        if (bd.at(x, y).kind == CellKind::Boundary) pix.push_back(vp.pixel_center(x, y));
    const auto pc = backward_sample(GeneratorSet{z2m1}, 1500, 100, 3);
    double worst = 0.0;
    for (C z : pc.points) {
      double best = 1e9;
      for (C p : pix) best = std::min(best, std::abs(p - z));
      worst = std::max(worst, best);
    }
    // Decorations near the real tips are thinner than a pixel, so a sample can
    // sit about 2.6 pixels from the nearest bounded pixel center.
    CHECK(worst <= 3.0 * vp.pixel_width());
  }

  TEST_CASE("backward samples stay near pixels some word keeps bounded") {
    // J(G) is the closure of the fiberwise Julia sets, so every sample is
    // close to a point whose orbit under some word stays within R.
    const GeneratorSet gs{z2m1, Polynomial::monomial(0.05, 2)};
    const Viewport vp = Viewport::square({0.0, 0.0}, 22.0, 256);
    const auto r = julia_raster(gs, vp, 10, default_render_radius(gs));
    const auto pc = backward_sample(gs, 3000, 100, 4);
    for (C z : pc.points) {
      int x = 0, y = 0;
      REQUIRE(vp.pixel_of(z, x, y));
      bool near = false;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int u = std::clamp(x + dx, 0, 255), v = std::clamp(y + dy, 0, 255);
          near = near || r.at(u, v).kind != CellKind::Escaped;
        }
      CHECK(near);
    }
  }

  TEST_CASE("rendering does not depend on the worker count") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 4.4, 128);
    set_thread_count(1);
    const auto a = encode_pgm(julia_raster(sy(), vp, 10, 16.0));
    set_thread_count(4);
    const auto b = encode_pgm(julia_raster(sy(), vp, 10, 16.0));
    set_thread_count(0);
    CHECK(a == b);
  }
}

TEST_SUITE("raster-io") {
  TEST_CASE("PGM layout and round trip") {
    const Viewport vp = Viewport::square({0.25, -0.5}, 1.5, 40);
    const Raster r = boundary_extract(escape_raster(Generator(z2), vp, 20, 4.0));
    const std::string bytes = encode_pgm(r);
    CHECK(bytes.rfind("P5\n", 0) == 0);
    CHECK(bytes.find("# psg viewport") != std::string::npos);
    CHECK(bytes.size() > 40u * 40u);
    const Raster back = decode_pgm(bytes);
    CHECK(back.width() == 40);
    CHECK(back.viewport().center == vp.center);
    CHECK(back.viewport().width == vp.width);
    CHECK(encode_pgm(back) == bytes);
    CHECK(cell_byte(Cell{CellKind::Bounded, 0}, 20) == 0);
    CHECK(cell_byte(Cell{CellKind::Boundary, 0}, 20) == 128);
    CHECK(cell_byte(Cell{CellKind::Escaped, 1}, 20) == 255);
  }

  TEST_CASE("file round trip and CSV") {
    const auto dir = std::filesystem::temp_directory_path() / "psg_unit_io";
    std::filesystem::create_directories(dir);
    const Raster r = escape_raster(Generator(z2), Viewport::square({0.0, 0.0}, 1.5, 32), 20, 4.0);
    write_pgm(r, (dir / "a.pgm").string());
    CHECK(encode_pgm(read_pgm((dir / "a.pgm").string())) == encode_pgm(r));
    if (png_supported()) {
      write_png(r, (dir / "a.png").string());
      CHECK(std::filesystem::file_size(dir / "a.png") > 0);
    }
    PointCloud pc;
    pc.points = {{1.0, 2.0}, {-0.5, 0.125}};
    CHECK(encode_csv(pc) == "re,im\n1,2\n-0.5,0.125\n");
    CHECK_THROWS(decode_pgm("P2\n1 1\n255\n0"));
  }
}
