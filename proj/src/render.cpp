#include "psg/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "psg/parallel.hpp"
#include "psg/postcritical.hpp"

namespace psg {

// ---------------------------------------------------------------- sequences

FiberSequence FiberSequence::explicit_sequence(std::vector<std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("fiber sequence must have length >= 1");
  FiberSequence s;
  s.idx_ = std::move(indices);
  return s;
}

FiberSequence FiberSequence::periodic(std::vector<std::size_t> pattern, std::size_t n) {
  if (pattern.empty() || n == 0) throw std::invalid_argument("periodic fiber sequence needs a pattern and n >= 1");
  FiberSequence s;
  s.rule_ = Rule::Periodic;
  s.period_ = pattern.size();
  for (std::size_t i = 0; i < n; ++i) s.idx_.push_back(pattern[i % pattern.size()]);
  return s;
}

FiberSequence FiberSequence::random(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("random fiber sequence needs m >= 1 and n >= 1");
  FiberSequence s;
  s.rule_ = Rule::RandomSeeded;
  s.seed_ = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) s.idx_.push_back(static_cast<std::size_t>(rng() % m));
  return s;
}

std::size_t FiberSequence::occurrences(std::size_t generator) const noexcept {
  return static_cast<std::size_t>(std::count(idx_.begin(), idx_.end(), generator));
}

void FiberSequence::validate(std::size_t m) const {
  if (idx_.empty()) throw std::invalid_argument("fiber sequence must have length >= 1");
  for (std::size_t i : idx_)
    if (i >= m) throw std::invalid_argument("fiber sequence index " + std::to_string(i) + " out of range");
}

// ---------------------------------------------------------------- trap disks

namespace {

/// Coefficients of u -> f(c + u), by repeated synthetic division.
std::vector<Complex> taylor_shift(const Polynomial& f, Complex c) {
  std::vector<Complex> a(f.coeffs().begin(), f.coeffs().end());
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) a[i - 1] += c * a[i];
  return a;
}

bool disk_inside(const TrapDisk& inner, const TrapDisk& outer) noexcept {
  return std::abs(inner.center - outer.center) + inner.radius <= outer.radius;
}

struct TrapSet {
  std::vector<TrapDisk> disks;
  double re_lo = 0, re_hi = -1, im_lo = 0, im_hi = -1;

  explicit TrapSet(std::vector<TrapDisk> d) : disks(std::move(d)) {
    if (disks.empty()) return;
    re_lo = im_lo = std::numeric_limits<double>::infinity();
    re_hi = im_hi = -std::numeric_limits<double>::infinity();
    for (const TrapDisk& t : disks) {
      re_lo = std::min(re_lo, t.center.real() - t.radius);
      re_hi = std::max(re_hi, t.center.real() + t.radius);
      im_lo = std::min(im_lo, t.center.imag() - t.radius);
      im_hi = std::max(im_hi, t.center.imag() + t.radius);
    }
  }

  bool contains(Complex z) const noexcept {
    if (z.real() < re_lo || z.real() > re_hi || z.imag() < im_lo || z.imag() > im_hi) return false;
    for (const TrapDisk& t : disks)
      if (t.contains(z)) return true;
    return false;
  }
};

}  // namespace

TrapDisk image_disk_bound(const Generator& h, const TrapDisk& d) {
  TrapDisk cur = d;
  for (const Polynomial& f : h.factors()) {
    const auto b = taylor_shift(f, cur.center);
    double rho = 0.0, rk = 1.0;
    for (std::size_t k = 1; k < b.size(); ++k) {
      rk *= cur.radius;
      rho += std::abs(b[k]) * rk;
    }
    cur = {b[0], rho};
    if (!std::isfinite(rho) || !std::isfinite(std::abs(b[0]))) return {b[0], std::numeric_limits<double>::infinity()};
  }
  return cur;
}

std::vector<TrapDisk> find_trap_disks(const GeneratorSet& gs, std::span<const Complex> centers, double radius_cap) {
  constexpr std::size_t kMaxDisks = 48;
  constexpr double kShrink = 0.8;
  std::vector<TrapDisk> fam;
  std::map<std::pair<long long, long long>, bool> seen;
  for (Complex c : centers) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) continue;
    const auto key = std::make_pair(std::llround(c.real() * 1e4), std::llround(c.imag() * 1e4));
    if (!seen.emplace(key, true).second) continue;
    fam.push_back({c, radius_cap});
    if (fam.size() == kMaxDisks) break;
  }
  const double min_radius = 1e-4 * radius_cap;
  std::vector<bool> active(fam.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (!active[i]) continue;
      for (const Generator& h : gs) {
        const TrapDisk img = image_disk_bound(h, fam[i]);
        bool fits = false;
        for (std::size_t j = 0; j < fam.size() && !fits; ++j) fits = active[j] && disk_inside(img, fam[j]);
        if (fits) continue;
        fam[i].radius *= kShrink;
        if (fam[i].radius < min_radius) active[i] = false;
        changed = true;
        break;
      }
    }
  }
  std::vector<TrapDisk> out;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (active[i]) out.push_back(fam[i]);
  return out;
}

double default_render_radius(const GeneratorSet& gs) { return 2.0 * gs.max_escape_radius(); }

std::vector<TrapDisk> find_trap_disks(const GeneratorSet& gs) {
  const double R = default_render_radius(gs);
  OrbitOptions opt;
  opt.max_samples = 4096;
  const PostcriticalReport rep = postcritical_orbit(gs, 64, R, opt);
  std::vector<Complex> centers{Complex{0.0, 0.0}};
  if (rep.verdict == PcbVerdict::Escaping) {
    for (const Generator& g : gs)
      for (Complex v : g.critical_values()) centers.push_back(v);
  } else {
    centers.insert(centers.end(), rep.samples.begin(), rep.samples.end());
  }
  return find_trap_disks(gs, centers, std::min(1.0, 0.25 * R));
}

// ---------------------------------------------------------------- rasters

namespace {

inline bool inside(Complex z, double R2) noexcept { return std::norm(z) <= R2; }

template <class PixelFn>
Raster render_rows(const Viewport& vp, RasterMeta meta, PixelFn&& fn) {
  Raster r(vp, std::move(meta));
  parallel_for(static_cast<std::size_t>(vp.px_h), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < vp.px_w; ++x) r.at(x, y) = fn(x, y);
  });
  return r;
}

void check_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("escape radius must be positive and finite");
}

}  // namespace

Raster escape_raster(const Generator& h, const Viewport& vp, int maxiter, double R) {
  check_radius(R);
  if (maxiter < 0) throw std::invalid_argument("maxiter must be >= 0");
  const double R2 = R * R;
  return render_rows(vp, {"escape", maxiter, R}, [&](int x, int y) -> Cell {
    Complex z = vp.pixel_center(x, y);
    if (!inside(z, R2)) return {CellKind::Escaped, 0};
    for (int k = 1; k <= maxiter; ++k) {
      z = h.apply(z);
      if (!inside(z, R2)) return {CellKind::Escaped, k};
    }
    return {CellKind::Bounded, 0};
  });
}

Raster fiber_raster(const GeneratorSet& gs, const FiberSequence& gamma, const Viewport& vp, double R) {
  check_radius(R);
  gamma.validate(gs.size());
  const double R2 = R * R;
  const auto& idx = gamma.indices();
  return render_rows(vp, {"fiber", static_cast<int>(idx.size()), R}, [&](int x, int y) -> Cell {
    Complex z = vp.pixel_center(x, y);
    if (!inside(z, R2)) return {CellKind::Escaped, 0};
    for (std::size_t k = 0; k < idx.size(); ++k) {
      z = gs[idx[k]].apply(z);
      if (!inside(z, R2)) return {CellKind::Escaped, static_cast<int>(k + 1)};
    }
    return {CellKind::Bounded, 0};
  });
}

Raster khat_raster(const GeneratorSet& gs, const Viewport& vp, int depth, double R) {
  check_radius(R);
  if (depth < 1) throw std::invalid_argument("khat_raster: depth must be >= 1");
  const double R2 = R * R;
  const TrapSet trap(find_trap_disks(gs));
  const auto gens = gs.generators();
  const std::size_t m = gens.size();

  struct Frame {
    Complex z;
    std::size_t next;
  };
  return render_rows(vp, {"khat", depth, R}, [&](int x, int y) -> Cell {
    const Complex c = vp.pixel_center(x, y);
    if (!inside(c, R2)) return {CellKind::Escaped, 0};
    if (trap.contains(c)) return {CellKind::Bounded, 0};
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(depth) + 1);
    stack.push_back({c, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int level = static_cast<int>(stack.size()) - 1;
      if (level == depth || f.next == m) {
        stack.pop_back();
        continue;
      }
      const Complex w = gens[f.next++].apply(f.z);
      if (!inside(w, R2)) return {CellKind::Escaped, level + 1};
      if (!trap.contains(w)) stack.push_back({w, 0});
    }
    return {CellKind::Bounded, 0};
  });
}

Raster julia_raster(const GeneratorSet& gs, const Viewport& vp, int depth, double R) {
  check_radius(R);
  if (depth < 1) throw std::invalid_argument("julia_raster: depth must be >= 1");
  const double R2 = R * R;
  const TrapSet trap(find_trap_disks(gs));
  const auto gens = gs.generators();
  const std::size_t m = gens.size();
  const double dx = vp.pixel_width(), dy = vp.pixel_height();
  constexpr unsigned kNeighbours = 0x1E;

  struct Frame {
    Complex p[5];
    unsigned alive;
    std::size_t next;
  };
  return render_rows(vp, {"julia", depth, R}, [&](int x, int y) -> Cell {
    const Complex c = vp.pixel_center(x, y);
    Frame root{{c, c + Complex{dx, 0}, c - Complex{dx, 0}, c + Complex{0, dy}, c - Complex{0, dy}}, 0, 0};
    for (unsigned i = 0; i < 5; ++i)
      if (inside(root.p[i], R2)) root.alive |= 1u << i;
    if (!(root.alive & 1u)) return {CellKind::Escaped, 0};

    bool survived = false;
    int deepest = 0;
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(depth) + 1);
    stack.push_back(root);
    bool fresh = true;  // the top frame has not been screened yet
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int level = static_cast<int>(stack.size()) - 1;
      if (fresh) {
        fresh = false;
        deepest = std::max(deepest, level);
        const bool lost_neighbour = (f.alive & kNeighbours) != kNeighbours;
        if (level == depth) {
          if (lost_neighbour) return {CellKind::Boundary, 0};
          survived = true;
          stack.pop_back();
          continue;
        }
        if (trap.contains(f.p[0])) {
          if (lost_neighbour) return {CellKind::Boundary, 0};
          bool all_trapped = true;
          for (unsigned i = 1; i < 5 && all_trapped; ++i)
            if (f.alive & (1u << i)) all_trapped = trap.contains(f.p[i]);
          if (all_trapped) {
            survived = true;
            stack.pop_back();
            continue;
          }
        }
      }
      if (f.next == m) {
        stack.pop_back();
        continue;
      }
      const Generator& h = gens[f.next++];
      Frame child{{}, 0, 0};
      const Complex w = h.apply(f.p[0]);
      if (!inside(w, R2)) continue;
      child.p[0] = w;
      child.alive = 1u;
      for (unsigned i = 1; i < 5; ++i) {
        if (!(f.alive & (1u << i))) continue;
        child.p[i] = h.apply(f.p[i]);
        if (inside(child.p[i], R2)) child.alive |= 1u << i;
      }
      stack.push_back(child);
      fresh = true;
    }
    if (survived) return {CellKind::Bounded, 0};
    return {CellKind::Escaped, deepest + 1};
  });
}

Raster boundary_extract(const Raster& r) {
  Raster out = r;
  const int w = r.width(), h = r.height();
  auto escaped = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h && r.at(x, y).kind == CellKind::Escaped;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (r.at(x, y).kind != CellKind::Bounded) continue;
      if (escaped(x + 1, y) || escaped(x - 1, y) || escaped(x, y + 1) || escaped(x, y - 1))
        out.at(x, y) = {CellKind::Boundary, 0};
    }
  RasterMeta meta = r.meta();
  meta.algorithm += "+boundary";
  Raster tagged(r.viewport(), meta);
  tagged.cells() = std::move(out.cells());
  return tagged;
}

// ---------------------------------------------------------------- chaos game

namespace {

Complex newton_fixed_point(const Generator& h, Complex z, bool& ok) {
  ok = false;
  for (int it = 0; it < 100; ++it) {
    const Complex f = h.apply(z) - z;
    const Complex df = h.derivative_at(z) - 1.0;
    if (!std::isfinite(std::abs(f)) || std::abs(df) == 0.0) return z;
    const Complex step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) {
      ok = true;
      return z;
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> repelling_fixed_points(const Generator& h) {
  std::vector<Complex> cands;
  const auto fs = h.factors();
  const bool pure_iterate = std::all_of(fs.begin(), fs.end(), [&](const Polynomial& f) { return f == fs.front(); });
  if (h.degree() <= 64) {
    cands = root_list(h.expanded() - Polynomial::identity());
  } else if (pure_iterate && fs.front().degree() >= 2) {
    cands = root_list(fs.front() - Polynomial::identity());
  } else {
    const double rad = h.escape_radius();
    for (int k = 0; k < 64; ++k) {
      bool ok = false;
      const Complex z = newton_fixed_point(h, std::polar(rad * 0.9, 2.0 * std::numbers::pi * (k + 0.5) / 64.0), ok);
      if (ok) cands.push_back(z);
    }
  }
  std::vector<std::pair<double, Complex>> rep;
  for (Complex z : cands) {
    bool ok = false;
    z = newton_fixed_point(h, z, ok);
    const double mult = std::abs(h.derivative_at(z));
    if (!(mult > 1.0 + 1e-9) || !std::isfinite(mult)) continue;
    if (std::abs(h.apply(z) - z) > 1e-8 * std::max(1.0, std::abs(z))) continue;
    rep.emplace_back(mult, z);
  }
  std::sort(rep.begin(), rep.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    if (a.second.real() != b.second.real()) return a.second.real() < b.second.real();
    return a.second.imag() < b.second.imag();
  });
  std::vector<Complex> out;
  for (const auto& [mult, z] : rep) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](Complex q) { return std::abs(q - z) < 1e-9; });
    if (!dup) out.push_back(z);
  }
  return out;
}

PointCloud backward_sample(const GeneratorSet& gs, std::size_t n_points, std::size_t burn_in, std::uint64_t seed) {
  if (n_points < 1) throw std::invalid_argument("backward_sample: n_points must be >= 1");
  const auto fixed = repelling_fixed_points(gs[0]);
  if (fixed.empty())
    throw std::runtime_error("backward_sample: generator 0 has no repelling fixed point; reorder the set so another generator seeds the chaos game");
  PointCloud pc;
  pc.seed = seed;
  pc.history_length = burn_in + n_points;
  pc.points.reserve(n_points);
  std::mt19937_64 rng(seed);
  Complex z = fixed.front();
  std::vector<std::size_t> choice;
  for (std::size_t step = 0; step < burn_in + n_points; ++step) {
    const Generator& h = gs[static_cast<std::size_t>(rng() % gs.size())];
    const auto fs = h.factors();
    choice.resize(fs.size());
    for (std::size_t i = fs.size(); i-- > 0;)
      choice[i] = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(fs[i].degree()));
    z = h.preimage_branch(z, choice);
    if (step >= burn_in) pc.points.push_back(z);
  }
  return pc;
}

}  // namespace psg
