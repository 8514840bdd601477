#include "psg/report.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "psg/render.hpp"
#include "psg/topology.hpp"

namespace psg {

using detail::ojson;

CheckSummary run_check(const GeneratorSet& gs, int pcb_depth, int m_depth) {
  CheckSummary s;
  s.pcb = pcb_check(gs, pcb_depth);
  if (s.pcb.verdict == PcbVerdict::Bounded) s.connectivity = connectivity_check(gs, s.pcb.verdict);
  s.m_depth = m_depth;
  s.m = m_set(gs, m_depth);
  s.m_count = count_m_components(gs, m_depth);
  for (int d = 1; d < m_depth; ++d) s.m_components_by_depth.push_back(count_m_components(gs, d).count);
  s.m_components_by_depth.push_back(s.m_count.count);
  s.hull = fixed_point_hull(gs);
  return s;
}

std::string check_json(const GeneratorSet& gs, const CheckSummary& s) {
  ojson j;
  j["command"] = "check";
  j["generators"] = detail::generator_set_json(gs);

  ojson p;
  p["verdict"] = to_string(s.pcb.verdict);
  p["witness"] = s.pcb.witness;
  p["seed"] = detail::complex_json(s.pcb.seed);
  p["max_modulus"] = s.pcb.max_modulus;
  p["depth"] = s.pcb.depth;
  p["radius_used"] = s.pcb.radius_used;
  p["levels_explored"] = s.pcb.levels_explored;
  p["sample_count"] = s.pcb.samples.size();
  j["pcb"] = std::move(p);

  ojson fp = ojson::array();
  for (const Generator& g : gs) fp.push_back(fixed_point(psi(g)));
  j["fixed_points"] = std::move(fp);
  j["hull"] = {s.hull.lo, s.hull.hi};
  j["m_components_by_depth"] = s.m_components_by_depth;

  ojson c;
  if (s.connectivity) {
    c["verdict"] = s.connectivity->connected ? "Connected" : "Inconclusive";
    c["rule"] = to_string(s.connectivity->rule);
    ojson gaps = ojson::array();
    for (const Interval& g : s.connectivity->gaps) gaps.push_back({g.lo, g.hi});
    c["gaps"] = std::move(gaps);
  } else {
    c["verdict"] = "NotApplicable";
    c["rule"] = to_string(ConnectivityRule::None);
    c["gaps"] = ojson::array();
  }
  j["connectivity"] = std::move(c);

  ojson m;
  m["depth"] = s.m_depth;
  m["hull"] = {s.hull.lo, s.hull.hi};
  m["components"] = s.m_count.count;
  m["cantor_flag"] = s.m_count.cantor_flag;
  ojson iv = ojson::array();
  constexpr std::size_t kListed = 16;
  for (std::size_t k = 0; k < std::min(kListed, s.m.size()); ++k) iv.push_back({s.m.intervals()[k].lo, s.m.intervals()[k].hi});
  m["first_intervals"] = std::move(iv);
  j["m_set"] = std::move(m);
  return j.dump(2) + "\n";
}

std::string analyze_raster_json(const Raster& input, const AnalyzeOptions& opt) {
  const bool extracted = input.count(CellKind::Boundary) == 0;
  const Raster r = extracted ? boundary_extract(input) : input;
  const Viewport& vp = r.viewport();

  ojson j;
  j["command"] = "analyze";
  j["artifact"] = "raster";
  j["raster"] = {{"width", r.width()},
                 {"height", r.height()},
                 {"viewport", {vp.center.real(), vp.center.imag(), vp.width, vp.height}},
                 {"algorithm", r.meta().algorithm},
                 {"depth", r.meta().depth},
                 {"boundary_extracted", extracted}};

  const ComponentMap cm = label_components(r, CellKind::Boundary, opt.connectivity);
  const std::size_t k = cm.sizes.size();
  ojson comps;
  comps["class"] = "Boundary";
  comps["connectivity"] = opt.connectivity;
  comps["count"] = k;
  comps["sizes"] = cm.sizes;
  std::size_t touching = 0;
  for (bool t : cm.touches_frame) touching += t ? 1 : 0;
  comps["touching_frame"] = touching;
  j["components"] = std::move(comps);

  ojson ord;
  if (k == 0 || k > opt.max_order_components) {
    ord["evaluated"] = false;
    ord["reason"] = k == 0 ? "no components" : "more than " + std::to_string(opt.max_order_components) + " components";
    j["order"] = std::move(ord);
    j["min_max"] = nullptr;
  } else {
    const TotalityReport rep = order_totality(cm);
    const OrderLaws laws = check_order_laws(rep.matrix);
    ord["evaluated"] = true;
    ord["total"] = rep.total;
    ord["truncated"] = rep.truncated;
    ord["antisymmetric"] = laws.antisymmetric;
    ord["transitive"] = laws.transitive;
    ojson pairs = ojson::array();
    for (const auto& [a, b] : rep.incomparable_pairs) pairs.push_back({a, b});
    ord["incomparable_pairs"] = std::move(pairs);
    ojson rows = ojson::array();
    for (const auto& row : rep.matrix) {
      std::string s;
      for (Order o : row) s += order_symbol(o);
      rows.push_back(s);
    }
    ord["matrix"] = std::move(rows);
    j["order"] = std::move(ord);
    if (rep.total) {
      const auto [mn, mx] = min_max_components(rep);
      j["min_max"] = {{"min", mn}, {"max", mx}};
    } else {
      j["min_max"] = nullptr;
    }
  }

  const CurveTrace t = trace_curve(r);
  ojson cv;
  cv["closed"] = t.closed;
  cv["jordan"] = jordan_heuristic(t);
  cv["points"] = t.points.size();
  cv["components"] = t.components;
  cv["branch_pixels"] = t.branch_pixels;
  cv["end_pixels"] = t.end_pixels;
  cv["pruned_spurs"] = t.pruned_spurs;
  cv["quasicircle_ratio"] = t.closed ? ojson(quasicircle_ratio(t, opt.quasicircle_pairs)) : ojson(nullptr);
  cv["diagnostic"] = t.diagnostic;
  j["curve"] = std::move(cv);
  return j.dump(2) + "\n";
}

std::string analyze_series_json(std::span<const Raster> rs, const AnalyzeOptions& opt) {
  if (rs.empty()) throw std::invalid_argument("series analysis needs at least one raster");
  std::vector<Raster> bs;
  for (const Raster& r : rs) bs.push_back(r.count(CellKind::Boundary) == 0 ? boundary_extract(r) : r);
  ojson j;
  j["command"] = "analyze";
  j["artifact"] = "series";
  ojson items = ojson::array();
  std::vector<std::size_t> counts;
  for (const Raster& r : bs) {
    counts.push_back(label_components(r, CellKind::Boundary, opt.connectivity).sizes.size());
    items.push_back({{"width", r.width()}, {"height", r.height()}, {"depth", r.meta().depth}, {"count", counts.back()}});
  }
  j["rasters"] = std::move(items);
  j["counts"] = counts;
  bool growing = counts.size() >= 2;
  for (std::size_t k = 1; k < counts.size(); ++k) growing = growing && counts[k] > counts[k - 1];
  j["growing"] = growing;
  j["stable"] = counts.size() >= 2 && counts[counts.size() - 1] == counts[counts.size() - 2];
  bool distinct = true;
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = a + 1; b < bs.size(); ++b) distinct = distinct && bs[a].width() != bs[b].width();
  if (bs.size() >= 3 && distinct) {
    const AreaScaling a = area_scaling(bs);
    j["area_slope"] = a.slope;
  } else {
    j["area_slope"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string analyze_points_json(const PointCloud& pc) {
  ojson j;
  j["command"] = "analyze";
  j["artifact"] = "points";
  j["count"] = pc.points.size();
  if (!pc.points.empty()) {
    double lo = std::abs(pc.points.front()), hi = lo;
    for (Complex z : pc.points) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
    j["min_modulus"] = lo;
    j["max_modulus"] = hi;
  } else {
    j["min_modulus"] = nullptr;
    j["max_modulus"] = nullptr;
  }
  return j.dump(2) + "\n";
}

PointCloud read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  PointCloud pc;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("re", 0) == 0) continue;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected re,im");
    try {
      pc.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return pc;
}

}  // namespace psg
