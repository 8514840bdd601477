#pragma once

#include <span>
#include <string>
#include <vector>

#include "psg/affine.hpp"
#include "psg/postcritical.hpp"
#include "psg/raster.hpp"

namespace psg {

/// Everything the `check` subcommand reports.
struct CheckSummary {
  PostcriticalReport pcb;
  /// Absent when pcb is not Bounded; connectivity_check needs that precondition.
  std::optional<ConnectivityResult> connectivity;
  int m_depth = 12;
  IntervalUnion m;
  MComponentCount m_count;
  /// Component count of M at depth 1..m_depth.
  std::vector<std::size_t> m_components_by_depth;
  Interval hull;
};

CheckSummary run_check(const GeneratorSet& gs, int pcb_depth = kDefaultPcbDepth, int m_depth = 12);
std::string check_json(const GeneratorSet& gs, const CheckSummary& s);

struct AnalyzeOptions {
  int connectivity = 8;
  /// Order matrices are skipped above this many components.
  std::size_t max_order_components = 64;
  int quasicircle_pairs = 400;
};

/// Components, surrounding order, min/max and curve diagnostics of the Boundary
/// class of a raster.
std::string analyze_raster_json(const Raster& r, const AnalyzeOptions& opt = {});
/// Component counts, growth flag and area slope across rasters of one scene
/// at increasing resolution.
std::string analyze_series_json(std::span<const Raster> rs, const AnalyzeOptions& opt = {});
/// Modulus statistics of a sampled point cloud.
std::string analyze_points_json(const PointCloud& pc);

/// Rows "re,im" after a header line, as written by write_csv.
PointCloud read_csv(const std::string& path);

}  // namespace psg
