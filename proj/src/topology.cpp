#include "psg/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "psg/render.hpp"

namespace psg {

// ---------------------------------------------------------------- labeling

ComponentMap label_components(std::span<const std::uint8_t> mask, int width, int height, int connectivity) {
  if (connectivity != 4 && connectivity != 8) throw std::invalid_argument("connectivity must be 4 or 8");
  if (mask.size() != static_cast<std::size_t>(width) * height) throw std::invalid_argument("mask size mismatch");
  ComponentMap cm;
  cm.width = width;
  cm.height = height;
  cm.labels.assign(mask.size(), -1);
  static constexpr int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || cm.labels[start] >= 0) continue;
    const int id = static_cast<int>(cm.sizes.size());
    std::size_t size = 0;
    bool frame = false;
    queue.assign(1, start);
    cm.labels[start] = id;
    while (!queue.empty()) {
      const std::size_t p = queue.back();
      queue.pop_back();
      ++size;
      const int x = static_cast<int>(p % width), y = static_cast<int>(p / width);
      if (x == 0 || y == 0 || x == width - 1 || y == height - 1) frame = true;
      for (int k = 0; k < connectivity; ++k) {
        const int nx = x + dx8[k], ny = y + dy8[k];
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const std::size_t q = static_cast<std::size_t>(ny) * width + nx;
        if (mask[q] && cm.labels[q] < 0) {
          cm.labels[q] = id;
          queue.push_back(q);
        }
      }
    }
    cm.sizes.push_back(size);
    cm.touches_frame.push_back(frame);
  }
  return cm;
}

ComponentMap label_components(const Raster& r, CellKind cls, int connectivity) {
  const auto mask = class_mask(r, cls);
  return label_components(mask, r.width(), r.height(), connectivity);
}

std::size_t julia_component_count(const Raster& r) { return label_components(r, CellKind::Boundary, 8).count(); }

// ---------------------------------------------------------------- surrounding order

char order_symbol(Order o) noexcept {
  switch (o) {
    case Order::Less: return 'L';
    case Order::Greater: return 'G';
    case Order::Incomparable: return 'I';
    case Order::Equal: return 'E';
  }
  return '?';
}

SurroundingOracle::SurroundingOracle(const ComponentMap& cm)
    : cm_(cm), reach_(cm.count()), done_(cm.count(), false), first_pixel_(cm.count(), 0) {
  std::vector<bool> seen(cm.count(), false);
  for (std::size_t p = 0; p < cm.labels.size(); ++p) {
    const int id = cm.labels[p];
    if (id >= 0 && !seen[static_cast<std::size_t>(id)]) {
      seen[static_cast<std::size_t>(id)] = true;
      first_pixel_[static_cast<std::size_t>(id)] = p;
    }
  }
}

const std::vector<bool>& SurroundingOracle::reach(int b) {
  const auto bi = static_cast<std::size_t>(b);
  if (done_[bi]) return reach_[bi];
  const int w = cm_.width, h = cm_.height;
  const std::size_t n = cm_.labels.size();
  std::vector<bool> blocked(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (cm_.labels[p] != b) continue;
    const int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    for (int yy = std::max(0, y - 1); yy <= std::min(h - 1, y + 1); ++yy)
      for (int xx = std::max(0, x - 1); xx <= std::min(w - 1, x + 1); ++xx)
        blocked[static_cast<std::size_t>(yy) * w + xx] = true;
  }
  std::vector<bool>& r = reach_[bi];
  r.assign(n, false);
  std::vector<std::size_t> queue;
  auto seed = [&](int x, int y) {
    const std::size_t p = static_cast<std::size_t>(y) * w + x;
    if (!blocked[p] && !r[p]) {
      r[p] = true;
      queue.push_back(p);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!queue.empty()) {
    const std::size_t p = queue.back();
    queue.pop_back();
    const int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    if (x > 0) seed(x - 1, y);
    if (x < w - 1) seed(x + 1, y);
    if (y > 0) seed(x, y - 1);
    if (y < h - 1) seed(x, y + 1);
  }
  done_[bi] = true;
  return r;
}

bool SurroundingOracle::surrounded_by(int a, int b) {
  if (a == b) return false;
  const auto& r = reach(b);
  for (std::size_t p = first_pixel_[static_cast<std::size_t>(a)]; p < cm_.labels.size(); ++p)
    if (cm_.labels[p] == a && r[p]) return false;
  return true;
}

OrderResult SurroundingOracle::order(int a, int b) {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= cm_.count() || static_cast<std::size_t>(b) >= cm_.count())
    throw std::out_of_range("component id out of range");
  OrderResult res;
  if (a == b) {
    res.order = Order::Equal;
    return res;
  }
  const bool a_in_b = surrounded_by(a, b);
  const bool b_in_a = surrounded_by(b, a);
  if (a_in_b && !b_in_a) res.order = Order::Less;
  else if (b_in_a && !a_in_b) res.order = Order::Greater;
  else res.order = Order::Incomparable;
  res.truncated = cm_.touches_frame[static_cast<std::size_t>(a)] || cm_.touches_frame[static_cast<std::size_t>(b)];
  return res;
}

OrderResult surrounding_order(int a, int b, const ComponentMap& cm) {
  SurroundingOracle oracle(cm);
  return oracle.order(a, b);
}

TotalityReport order_totality(const ComponentMap& cm) {
  TotalityReport rep;
  const std::size_t n = cm.count();
  rep.matrix.assign(n, std::vector<Order>(n, Order::Equal));
  SurroundingOracle oracle(cm);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const OrderResult r = oracle.order(static_cast<int>(a), static_cast<int>(b));
      rep.matrix[a][b] = r.order;
      rep.matrix[b][a] = r.order == Order::Less ? Order::Greater : r.order == Order::Greater ? Order::Less : r.order;
      if (r.order == Order::Incomparable) {
        rep.total = false;
        rep.incomparable_pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        if (r.truncated) rep.truncated = true;
      }
    }
  }
  return rep;
}

OrderLaws check_order_laws(const std::vector<std::vector<Order>>& m) {
  OrderLaws laws;
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (m[a][a] != Order::Equal) laws.antisymmetric = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const Order ab = m[a][b], ba = m[b][a];
      const bool ok = (ab == Order::Less && ba == Order::Greater) || (ab == Order::Greater && ba == Order::Less) ||
                      (ab == Order::Incomparable && ba == Order::Incomparable);
      if (!ok) laws.antisymmetric = false;
      if (ab != Order::Less) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (c != a && c != b && m[b][c] == Order::Less && m[a][c] != Order::Less) laws.transitive = false;
    }
  }
  return laws;
}

std::pair<int, int> min_max_components(const TotalityReport& rep) {
  if (!rep.total) throw OrderError("surrounding order is not total; no least/greatest component");
  const std::size_t n = rep.matrix.size();
  if (n == 0) throw OrderError("no components");
  int lo = -1, hi = -1;
  for (std::size_t a = 0; a < n; ++a) {
    bool least = true, greatest = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      least = least && rep.matrix[a][b] == Order::Less;
      greatest = greatest && rep.matrix[a][b] == Order::Greater;
    }
    if (least) lo = static_cast<int>(a);
    if (greatest) hi = static_cast<int>(a);
  }
  if (lo < 0 || hi < 0) throw OrderError("order matrix has no least or greatest element");
  return {lo, hi};
}

std::pair<int, int> min_max_components(const ComponentMap& cm) { return min_max_components(order_totality(cm)); }

// ---------------------------------------------------------------- curves

void thin(std::vector<std::uint8_t>& m, int w, int h) {
  auto at = [&](int x, int y) -> int {
    return (x < 0 || y < 0 || x >= w || y >= h) ? 0 : (m[static_cast<std::size_t>(y) * w + x] ? 1 : 0);
  };
  std::vector<std::size_t> kill;
  for (bool changed = true; changed;) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      kill.clear();
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          if (!at(x, y)) continue;
          // P2..P9 clockwise from north.
          const std::array<int, 8> p{at(x, y - 1), at(x + 1, y - 1), at(x + 1, y), at(x + 1, y + 1),
                                     at(x, y + 1), at(x - 1, y + 1), at(x - 1, y), at(x - 1, y - 1)};
          const int b = std::accumulate(p.begin(), p.end(), 0);
          if (b < 2 || b > 6) continue;
          int a = 0;
          for (int k = 0; k < 8; ++k) a += (p[k] == 0 && p[(k + 1) % 8] == 1);
          if (a != 1) continue;
          if (pass == 0) {
            if (p[0] * p[2] * p[4] != 0 || p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0 || p[0] * p[4] * p[6] != 0) continue;
          }
          kill.push_back(static_cast<std::size_t>(y) * w + x);
        }
      for (std::size_t q : kill) m[q] = 0;
      if (!kill.empty()) changed = true;
    }
  }
}

namespace {

/// m-adjacency: 4-neighbours always, diagonal neighbours only when neither
/// shared 4-neighbour is set. This makes a thinned 8-curve a simple graph.
std::vector<std::size_t> m_neighbours(const std::vector<std::uint8_t>& m, int w, int h, std::size_t p) {
  auto on = [&](int x, int y) { return x >= 0 && y >= 0 && x < w && y < h && m[static_cast<std::size_t>(y) * w + x]; };
  const int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
  std::vector<std::size_t> out;
  static constexpr int d4[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& d : d4)
    if (on(x + d[0], y + d[1])) out.push_back(static_cast<std::size_t>(y + d[1]) * w + (x + d[0]));
  static constexpr int dd[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (const auto& d : dd)
    if (on(x + d[0], y + d[1]) && !on(x + d[0], y) && !on(x, y + d[1]))
      out.push_back(static_cast<std::size_t>(y + d[1]) * w + (x + d[0]));
  return out;
}

}  // namespace

std::size_t prune_spurs(std::vector<std::uint8_t>& m, int w, int h, int max_len) {
  std::size_t removed = 0;
  // Each round can expose a new end only where a spur was cut, so a few rounds suffice.
  for (int round = 0; round < 4; ++round) {
    std::vector<std::size_t> doomed;
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (!m[p] || m_neighbours(m, w, h, p).size() != 1) continue;
      std::vector<std::size_t> chain{p};
      std::size_t prev = p, cur = m_neighbours(m, w, h, p).front();
      bool hits_branch = false;
      while (static_cast<int>(chain.size()) <= max_len) {
        const auto nb = m_neighbours(m, w, h, cur);
        if (nb.size() >= 3) {
          hits_branch = true;
          break;
        }
        if (nb.size() != 2) break;
        chain.push_back(cur);
        const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      if (hits_branch && static_cast<int>(chain.size()) <= max_len) {
        doomed.insert(doomed.end(), chain.begin(), chain.end());
        ++removed;
      }
    }
    if (doomed.empty()) break;
    for (std::size_t q : doomed) m[q] = 0;
  }
  return removed;
}

CurveTrace trace_curve(std::span<const std::uint8_t> mask, const Viewport& vp) {
  const int w = vp.px_w, h = vp.px_h;
  std::vector<std::uint8_t> m(mask.begin(), mask.end());
  thin(m, w, h);
  CurveTrace t;
  t.pruned_spurs = prune_spurs(m, w, h);
  t.pixel_size = vp.pixel_width();
  t.components = label_components(m, w, h, 8).count();

  std::size_t start = m.size();
  std::size_t n_on = 0;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (!m[p]) continue;
    ++n_on;
    if (start == m.size()) start = p;
    const std::size_t deg = m_neighbours(m, w, h, p).size();
    if (deg >= 3) ++t.branch_pixels;
    if (deg <= 1) ++t.end_pixels;
  }
  if (n_on == 0) {
    t.diagnostic = "no boundary pixels";
    return t;
  }

  // Walk the component holding the first pixel.
  std::vector<bool> visited(m.size(), false);
  std::size_t prev = m.size(), cur = start;
  for (;;) {
    visited[cur] = true;
    t.points.push_back(vp.pixel_center(static_cast<int>(cur % w), static_cast<int>(cur / w)));
    std::size_t next = m.size();
    for (std::size_t q : m_neighbours(m, w, h, cur)) {
      if (q == prev) continue;
      if (q == start && t.points.size() >= 3 && prev != m.size()) {
        next = start;
        break;
      }
      if (!visited[q] && next == m.size()) next = q;
    }
    if (next == start) {
      t.closed = true;
      break;
    }
    if (next == m.size()) break;
    prev = cur;
    cur = next;
  }

  if (t.components != 1) {
    t.closed = false;
    t.diagnostic = std::to_string(t.components) + " curve components";
  } else if (t.branch_pixels > 0) {
    t.closed = false;
    t.diagnostic = std::to_string(t.branch_pixels) + " branch pixels";
  } else if (t.end_pixels > 0) {
    t.closed = false;
    t.diagnostic = "open curve with " + std::to_string(t.end_pixels) + " end pixels";
  } else if (!t.closed || t.points.size() != n_on) {
    t.closed = false;
    t.diagnostic = "walk did not return to its start";
  } else if (t.points.size() < 8) {
    t.closed = false;
    t.diagnostic = "loop shorter than 8 pixels";
  }
  return t;
}

CurveTrace trace_curve(const Raster& r) {
  const auto mask = class_mask(r, CellKind::Boundary);
  return trace_curve(mask, r.viewport());
}

std::string encode_curve_csv(const CurveTrace& t) {
  PointCloud pc;
  pc.points = t.points;
  if (t.closed && !t.points.empty()) pc.points.push_back(t.points.front());
  return encode_csv(pc);
}

bool jordan_heuristic(const CurveTrace& t) {
  return t.closed && t.components == 1 && t.branch_pixels == 0 && t.end_pixels == 0 && t.points.size() >= 8;
}

double quasicircle_ratio(const CurveTrace& t, int n_pairs, double min_chord_px) {
  if (n_pairs < 1) throw std::invalid_argument("quasicircle_ratio: n_pairs must be >= 1");
  if (!t.closed) throw std::invalid_argument("quasicircle_ratio requires a closed trace");
  const std::size_t n = t.points.size();
  const std::size_t anchors = std::min<std::size_t>(n, static_cast<std::size_t>(n_pairs));
  const double min_chord = min_chord_px * t.pixel_size;
  std::vector<double> fwd(n), bwd(n);
  double best = 0.0;
  for (std::size_t k = 0; k < anchors; ++k) {
    const std::size_t i = k * n / anchors;
    const Complex zi = t.points[i];
    double run = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
      const std::size_t j = (i + s) % n;
      run = std::max(run, std::abs(t.points[j] - zi));
      fwd[j] = run;
    }
    run = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
      const std::size_t j = (i + n - s) % n;
      run = std::max(run, std::abs(t.points[j] - zi));
      bwd[j] = run;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double chord = std::abs(t.points[j] - zi);
      if (chord < min_chord || chord == 0.0) continue;
      best = std::max(best, std::min(fwd[j], bwd[j]) / chord);
    }
  }
  return best;
}

AreaScaling area_scaling(std::span<const Raster> rs, CellKind cls) {
  if (rs.size() < 3) throw std::invalid_argument("area_scaling needs at least 3 rasters");
  AreaScaling out;
  for (const Raster& r : rs) {
    const double px = r.viewport().pixel_width();
    const double area = static_cast<double>(r.count(cls)) * px * r.viewport().pixel_height();
    if (!(area > 0.0)) throw std::invalid_argument("area_scaling: raster with no pixels of the class");
    out.log_pixel_size.push_back(std::log(px));
    out.log_area.push_back(std::log(area));
  }
  const double n = static_cast<double>(rs.size());
  const double mx = std::accumulate(out.log_pixel_size.begin(), out.log_pixel_size.end(), 0.0) / n;
  const double my = std::accumulate(out.log_area.begin(), out.log_area.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    sxy += (out.log_pixel_size[i] - mx) * (out.log_area[i] - my);
    sxx += (out.log_pixel_size[i] - mx) * (out.log_pixel_size[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("area_scaling: resolutions must differ");
  out.slope = sxy / sxx;
  return out;
}

StabilityReport component_count_stability(const GeneratorSet& gs, const Viewport& base,
                                          std::span<const StabilitySetting> settings) {
  if (settings.empty()) throw std::invalid_argument("component_count_stability needs at least one setting");
  StabilityReport rep;
  const double R = default_render_radius(gs);
  for (const StabilitySetting& s : settings) {
    const Viewport vp(base.center, base.width, base.height, s.res, s.res);
    rep.settings.push_back(s);
    rep.counts.push_back(julia_component_count(julia_raster(gs, vp, s.depth, R)));
  }
  const std::size_t k = rep.counts.size();
  rep.stable = k >= 2 && rep.counts[k - 1] == rep.counts[k - 2];
  rep.stable_count = rep.stable ? rep.counts.back() : 0;
  return rep;
}

}  // namespace psg
