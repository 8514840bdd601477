#include <doctest.h>

#include <json.hpp>

#include <filesystem>

#include "oracle.hpp"
#include "psg/examples.hpp"
#include "psg/render.hpp"
#include "psg/report.hpp"

using namespace psg;
using oracle::C;
using nlohmann::json;

namespace {

Raster rings(int n, std::initializer_list<double> radii) {
  const Viewport vp = Viewport::square({0.0, 0.0}, 1.0, n);
  Raster r(vp, {"synthetic", 0, 0.0});
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double m = std::abs(vp.pixel_center(x, y));
      for (double rad : radii)
        if (std::abs(m - rad) < 1.5 * vp.pixel_width()) r.at(x, y) = Cell{CellKind::Boundary, 0};
    }
  return r;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("check json for the round-circle example") {
    const auto e = build_sy();
    const json j = json::parse(check_json(e.generator_set, run_check(e.generator_set)));
    CHECK(j["command"] == "check");
    CHECK(j["pcb"]["verdict"] == "Bounded");
    CHECK(j["connectivity"]["verdict"] == "Inconclusive");
    REQUIRE(j["fixed_points"].size() == 2);
    CHECK(j["fixed_points"][0].get<double>() == 0.0);
    CHECK(j["fixed_points"][1].get<double>() == doctest::Approx(std::log(4.0)));
    CHECK(j["hull"][1].get<double>() == doctest::Approx(std::log(4.0)));
    const auto by_depth = j["m_components_by_depth"].get<std::vector<std::size_t>>();
    REQUIRE(by_depth.size() == 12);
    for (std::size_t d = 0; d < by_depth.size(); ++d) CHECK(by_depth[d] == (std::size_t{2} << d));
    CHECK(j["m_set"]["cantor_flag"] == true);
  }

  TEST_CASE("check json for connected and escaping sets") {
    const GeneratorSet half{Polynomial::monomial(1.0, 2), Polynomial::monomial(0.5, 2)};
    const json a = json::parse(check_json(half, run_check(half)));
    CHECK(a["connectivity"]["verdict"] == "Connected");
    CHECK(a["connectivity"]["rule"] == to_string(ConnectivityRule::DegreeTwo));
    for (std::size_t c : a["m_components_by_depth"].get<std::vector<std::size_t>>()) CHECK(c == 1);

    const GeneratorSet esc{Polynomial({C{5.0}, C{0.0}, C{1.0}})};
    const auto s = run_check(esc);
    CHECK(s.pcb.verdict == PcbVerdict::Escaping);
    CHECK_FALSE(s.connectivity.has_value());
    const json b = json::parse(check_json(esc, s));
    CHECK(b["pcb"]["verdict"] == "Escaping");
    CHECK(b["connectivity"]["verdict"] == "NotApplicable");
  }

  TEST_CASE("analyze json on concentric rings") {
    const json j = json::parse(analyze_raster_json(rings(200, {0.3, 0.8})));
    CHECK(j["components"]["count"] == 2);
    CHECK(j["order"]["evaluated"] == true);
    CHECK(j["order"]["total"] == true);
    CHECK(j["order"]["antisymmetric"] == true);
    CHECK(j["order"]["transitive"] == true);
    CHECK_FALSE(j["min_max"].is_null());
    CHECK(j["min_max"]["min"] != j["min_max"]["max"]);
  }

  TEST_CASE("analyze json on a single circle") {
    const json j = json::parse(analyze_raster_json(rings(256, {0.6})));
    CHECK(j["components"]["count"] == 1);
    CHECK(j["curve"]["closed"] == true);
    CHECK(j["curve"]["jordan"] == true);
    CHECK(j["curve"]["quasicircle_ratio"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("analyze json with side-by-side blobs is not total") {
    const Viewport vp = Viewport::square({0.0, 0.0}, 1.0, 128);
    Raster r(vp, {"synthetic", 0, 0.0});
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) {
        const C z = vp.pixel_center(x, y);
        if (std::abs(z - C{-0.5}) < 0.2 || std::abs(z - C{0.5}) < 0.2) r.at(x, y) = Cell{CellKind::Boundary, 0};
      }
    const json j = json::parse(analyze_raster_json(r));
    CHECK(j["components"]["count"] == 2);
    CHECK(j["order"]["total"] == false);
    CHECK(j["order"]["incomparable_pairs"].size() == 1);
    CHECK(j["min_max"].is_null());
  }

  TEST_CASE("series analysis") {
    const std::vector<Raster> same{rings(128, {0.5}), rings(256, {0.5}), rings(512, {0.5})};
    const json a = json::parse(analyze_series_json(same));
    CHECK(a["counts"] == json::array({1, 1, 1}));
    CHECK(a["stable"] == true);
    CHECK(a["growing"] == false);
    CHECK(a["area_slope"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
    const std::vector<Raster> more{rings(256, {0.3}), rings(256, {0.3, 0.6}), rings(256, {0.2, 0.5, 0.8})};
    const json b = json::parse(analyze_series_json(more));
    CHECK(b["growing"] == true);
    CHECK(b["area_slope"].is_null());
    CHECK_THROWS(analyze_series_json(std::vector<Raster>{}));
  }

  TEST_CASE("point clouds") {
    PointCloud pc;
    pc.points = {C{1.0, 0.0}, C{0.0, -2.0}, C{0.3, 0.4}};
    const json j = json::parse(analyze_points_json(pc));
    CHECK(j["count"] == 3);
    CHECK(j["min_modulus"].get<double>() == doctest::Approx(0.5));
    CHECK(j["max_modulus"].get<double>() == doctest::Approx(2.0));
    CHECK(json::parse(analyze_points_json(PointCloud{}))["min_modulus"].is_null());

    const auto path = std::filesystem::temp_directory_path() / "psg_report_points.csv";
    write_csv(pc, path.string());
    const PointCloud back = read_csv(path.string());
    REQUIRE(back.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.points[i] == pc.points[i]);
    std::filesystem::remove(path);
    CHECK_THROWS(read_csv(path.string()));
  }
}
