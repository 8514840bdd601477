#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "psg/affine.hpp"
#include "psg/examples.hpp"

using namespace psg;
using oracle::C;

namespace {

const double ln2 = std::log(2.0);

bool near_any(const std::vector<C>& pts, C z, double tol) {
  for (C p : pts)
    if (std::abs(p - z) <= tol) return true;
  return false;
}

}  // namespace

TEST_SUITE("examples") {
  TEST_CASE("sy builder") {
    const auto e = build_sy();
    REQUIRE(e.generator_set.size() == 2);
    CHECK(e.generator_set[0].degree() == 3);
    CHECK(e.generator_set[1].degree() == 2);
    CHECK(fixed_point(psi(e.generator_set[0])) == 0.0);
    CHECK(fixed_point(psi(e.generator_set[1])) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    const auto m = m_set(e.generator_set, 1);
    REQUIRE(m.size() == 2);
    CHECK(m.intervals()[0].hi == doctest::Approx(0.462098).epsilon(1e-6));
    CHECK(m.intervals()[1].lo == doctest::Approx(0.693147).epsilon(1e-6));
    REQUIRE(e.backward_region);
    CHECK(*e.backward_region == RegionSpec::annulus({0.0, 0.0}, 0.9, 4.5));
    CHECK(e.connectivity == Connectivity::Cantor);
    CHECK(count_m_components(e.generator_set, 12).cantor_flag);
  }

  TEST_CASE("logistic admissibility") {
    const auto a = build_logistic(4.0, 1, 1);
    CHECK(a.generator_set[0].expanded() == Polynomial({C{0.0}, C{4.0}, C{-4.0}}));
    CHECK_NOTHROW(build_logistic(2.0, 1, 1));
    try {
      build_logistic(5.0, 1, 1);
      FAIL("expected AdmissibilityError");
    } catch (const AdmissibilityError& err) {
      CHECK(std::string(err.what()).find("1.25") != std::string::npos);
    }
    CHECK_THROWS(build_logistic(-1.0, 1, 1));
    CHECK_THROWS(build_logistic(1.0, 0, 1));
    // 27/4 z^2 (1 - z) sits exactly on the bound: (2/3)^2 (1/3) = 4/27.
    CHECK_NOTHROW(build_logistic(6.75, 2, 1));
  }

  TEST_CASE("logistic keeps [0,1] invariant") {
    for (auto [c, a, b] : {std::tuple{4.0, 1, 1}, std::tuple{6.75, 2, 1}, std::tuple{2.0, 1, 1}}) {
      const auto g = build_logistic(c, a, b).generator_set[0];
      for (int k = 0; k <= 1000; ++k) {
        const C w = g.apply(k / 1000.0);
        CHECK(std::abs(w.imag()) == 0.0);
        CHECK(w.real() >= -1e-12);
        CHECK(w.real() <= 1.0 + 1e-12);
      }
    }
  }

  TEST_CASE("fincomp construction") {
    const auto e1 = build_fincomp(2, 0.25, 1);
    REQUIRE(e1.generator_set.size() == 4);
    for (const Generator& g : e1.generator_set) CHECK(g.degree() == 2);
    CHECK(build_fincomp(3, 0.25, 1).generator_set.size() == 6);
    for (int l = 1; l <= 5; ++l) {
      const auto e = build_fincomp(3, 0.25, l);
      for (int j = 1; j <= 3; ++j) {
        const Generator& alpha = e.generator_set[2 * (j - 1)];
        CHECK(alpha.degree() == (1 << l));
        CHECK(fixed_point(psi(alpha)) == doctest::Approx(std::log(j)).epsilon(1e-12));
        // Expanded leading coefficient is (1/j)^(2^l - 1).
        CHECK(alpha.log_abs_leading() == doctest::Approx(-((1 << l) - 1) * std::log(j)).epsilon(1e-12));
      }
    }
    CHECK(build_fincomp(2, 0.25, kFincompIterate).component_count == std::size_t{2});
    CHECK_THROWS(build_fincomp(1, 0.25, 4));
    CHECK_THROWS(build_fincomp(2, 0.5, 4));
    CHECK_THROWS(build_fincomp(2, 0.0, 4));
    CHECK_THROWS(build_fincomp(2, 0.25, 0));
  }

  TEST_CASE("jbnq_first construction") {
    const auto e = build_jbnq_first();
    REQUIRE(e.generator_set.size() == 2);
    CHECK(e.generator_set[0].expanded() == Polynomial({C{0.0}, C{0.0}, C{-2.0}, C{0.0}, C{1.0}}));
    CHECK(e.generator_set[1].expanded() == Polynomial::monomial(1.0 / 64, 4));
    REQUIRE(e.forward);
    CHECK(e.forward->disk == RegionSpec::disk({0.0, 0.0}, 0.4));
    REQUIRE(e.backward_region);
    CHECK(*e.backward_region == RegionSpec::annulus({0.0, 0.0}, 0.4, 4.0));
    CHECK(e.cert_depth <= 10);
    CHECK(e.non_jordan_generator == std::size_t{0});
    const auto r = pcb_check(e.generator_set);
    REQUIRE(r.verdict == PcbVerdict::Bounded);
    for (C p : e.postcritical_points) CHECK(near_any(r.samples, p, 1e-9));
    for (C s : r.samples) CHECK((std::abs(s) < 0.4 || std::abs(s + 1.0) <= 1e-9));
  }

  TEST_CASE("jbnq range and connectivity") {
    const auto e = build_jbnq(C{0.05, 0.0});
    CHECK(e.generator_set[1].expanded() == Polynomial::monomial(0.05, 2));
    const auto c = connectivity_check(e.generator_set);
    CHECK(c.connected);
    CHECK(c.rule == ConnectivityRule::DegreeTwo);
    CHECK(e.connectivity == Connectivity::Connected);
    CHECK_NOTHROW(build_jbnq(C{0.0, 0.09}));
    CHECK_THROWS(build_jbnq(C{0.2, 0.0}));
    CHECK_THROWS(build_jbnq(C{0.0, 0.0}));
    CHECK_THROWS(build_jbnq(C{0.08, 0.08}));
  }

  TEST_CASE("constprop threshold closed form") {
    const GeneratorSet gs{Polynomial({C{-1.0}, C{0.0}, C{1.0}})};
    const double want = std::exp(-12.0 * (ln2 + 0.5 * ln2 - std::log(0.3) / 3.0));
    CHECK(constprop_threshold(gs, 0.3, 3) == doctest::Approx(want).epsilon(1e-13));
    CHECK_THROWS(constprop_threshold(gs, 0.3, 2));
    CHECK_THROWS(constprop_threshold(gs, 0.0, 3));
    CHECK_THROWS(constprop_threshold(gs, 0.3, 1));
    // The log r term enters as -k/d log r with k = d(d-1)d_h/(d+d_h-d_h d) = -12,
    // so doubling r multiplies c0 by 2^(12/3) = 16.
    for (double r : {0.05, 0.1, 0.3, 0.6}) {
      const double ratio = constprop_threshold(gs, 2 * r, 3) / constprop_threshold(gs, r, 3);
      CHECK(ratio == doctest::Approx(16.0).epsilon(1e-12));
    }
    // Minimum over generators.
    const GeneratorSet two{Polynomial({C{-1.0}, C{0.0}, C{1.0}}), Polynomial::monomial(0.5, 3)};
    CHECK(constprop_threshold(two, 0.3, 3) <= constprop_threshold(gs, 0.3, 3));
    const double lone = constprop_threshold(GeneratorSet{Polynomial::monomial(0.5, 3)}, 0.3, 3);
    CHECK(constprop_threshold(two, 0.3, 3) == std::min(lone, constprop_threshold(gs, 0.3, 3)));
  }

  TEST_CASE("countprop construction") {
    const auto e = build_countprop_like(0.25, 4);
    REQUIRE(e.generator_set.size() == 3);
    for (const Generator& g : e.generator_set) CHECK(g.degree() == 16);
    CHECK(e.components_growing);
    const auto e1 = build_countprop_like(0.25, 1);
    for (const Generator& g : e1.generator_set) CHECK(g.degree() == 2);
    CHECK_THROWS(build_countprop_like(0.6, 4));
  }

  TEST_CASE("shipped examples agree with their metadata") {
    const auto all = shipped_examples();
    CHECK(all.size() == 6);
    for (const auto& e : all) {
      CAPTURE(e.name);
      CHECK(pcb_check(e.generator_set).verdict == e.pcb);
      CHECK_FALSE(e.claims.empty());
      for (const auto& c : e.claims) {
        CHECK_FALSE(c.tag.empty());
        CHECK_FALSE(c.note.empty());
      }
      CHECK(example_by_name(e.name).name == e.name);
      if (e.connectivity == Connectivity::Connected) CHECK(connectivity_check(e.generator_set).connected);
      if (e.connectivity == Connectivity::Cantor) CHECK(count_m_components(e.generator_set, 10).cantor_flag);
    }
    CHECK_THROWS_AS(example_by_name("nope"), std::invalid_argument);
  }
}
