#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "psg/postcritical.hpp"

using namespace psg;
using oracle::C;

namespace {

GeneratorSet sy() { return {Polynomial::monomial(1.0, 3), Polynomial::monomial(0.25, 2)}; }
Polynomial quad(C c) { return Polynomial({c, C{0.0}, C{1.0}}); }

bool has_point(const std::vector<C>& pts, C z, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](C p) { return std::abs(p - z) <= tol; });
}

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("generator set invariants") {
    CHECK_THROWS(GeneratorSet(std::vector<Generator>{}));
    CHECK_THROWS(GeneratorSet{Polynomial::identity()});
    CHECK_THROWS(GeneratorSet(std::vector<Generator>{Generator(quad(0.0), "a"), Generator(quad(1.0), "a")}));
    CHECK(sy().size() == 2);
    CHECK(sy().max_escape_radius() == 8.0);
  }

  TEST_CASE("chain generators apply their first factor first") {
    const Generator g(std::vector<Polynomial>{Polynomial::monomial(1.0, 3), Polynomial::monomial(0.25, 2)});
    CHECK(g.degree() == 6);
    CHECK(g.apply(2.0) == C{16.0});
    CHECK(g.leading() == C{0.25});
    const Generator it = Generator::iterate(quad(-1.0), 2);
    CHECK(it.expanded() == Polynomial({C{0.0}, C{0.0}, C{-2.0}, C{0.0}, C{1.0}}));
  }

  TEST_CASE("word_apply examples") {
    CHECK(*word_apply(sy(), {0, 1}, 2.0) == C{16.0});
    CHECK(*word_apply(sy(), {}, C{0.3, 0.2}) == C{0.3, 0.2});
    CHECK(*word_apply(GeneratorSet{Polynomial::monomial(1.0, 2)}, {0, 0, 0}, 2.0) == C{256.0});
    CHECK_THROWS(word_apply(sy(), {2}, 1.0));
  }

  TEST_CASE("postcritical orbit examples") {
    const auto a = pcb_check(sy());
    CHECK(a.verdict == PcbVerdict::Bounded);
    REQUIRE(a.samples.size() == 1);
    CHECK(std::abs(a.samples[0]) <= 1e-9);

    const auto b = pcb_check(GeneratorSet{quad(-1.0)});
    CHECK(b.verdict == PcbVerdict::Bounded);
    CHECK(b.samples.size() == 2);
    CHECK(has_point(b.samples, -1.0, 1e-9));
    CHECK(has_point(b.samples, 0.0, 1e-9));

    const auto c = pcb_check(GeneratorSet{quad(3.0)});
    CHECK(c.verdict == PcbVerdict::Escaping);
    CHECK(std::all_of(c.witness.begin(), c.witness.end(), [](std::size_t i) { return i == 0; }));
  }

  TEST_CASE("logistic boundary case is bounded") {
    const auto r = pcb_check(GeneratorSet{Polynomial({C{0.0}, C{4.0}, C{-4.0}})});
    CHECK(r.verdict == PcbVerdict::Bounded);
    CHECK(has_point(r.samples, 1.0, 1e-9));
    CHECK(has_point(r.samples, 0.0, 1e-9));
  }

  TEST_CASE("z^2 with z^2 + 5 escapes") {
    CHECK(pcb_check({Polynomial::monomial(1.0, 2), quad(5.0)}).verdict == PcbVerdict::Escaping);
  }

  TEST_CASE("escaping witnesses replay past the radius") {
    for (const GeneratorSet& gs : {GeneratorSet{quad(3.0)}, GeneratorSet{Polynomial::monomial(1.0, 2), quad(5.0)},
                                   GeneratorSet{quad(0.3), quad(-0.5)}}) {
      const auto r = pcb_check(gs);
      if (r.verdict != PcbVerdict::Escaping) continue;
      const auto z = word_apply(gs, r.witness, r.seed);
      CHECK((!z || std::abs(*z) > r.radius_used));
    }
  }

  TEST_CASE("depth monotonicity never turns escaping into bounded") {
    const GeneratorSet gs{quad(0.3), quad(-0.5)};
    bool escaped = false;
    for (int d : {1, 2, 4, 8, 16, 32, 64}) {
      const auto v = pcb_check(gs, d).verdict;
      if (escaped) CHECK(v == PcbVerdict::Escaping);
      escaped = escaped || v == PcbVerdict::Escaping;
    }
  }

  TEST_CASE("bounded sample sets are forward invariant") {
    for (const GeneratorSet& gs : {sy(), GeneratorSet{quad(-1.0)}, GeneratorSet{quad(-1.0), Polynomial::monomial(0.05, 2)}}) {
      const auto r = pcb_check(gs);
      REQUIRE(r.verdict == PcbVerdict::Bounded);
      CHECK(r.max_modulus <= r.radius_used);
      for (C s : r.samples)
        for (const Generator& h : gs) CHECK(has_point(r.samples, h.apply(s), 1e-8));
    }
  }

  TEST_CASE("single quadratic agrees with the classical connectivity test") {
    CHECK(pcb_check(GeneratorSet{quad(0.0)}).verdict == PcbVerdict::Bounded);
    CHECK(pcb_check(GeneratorSet{quad(-1.0)}).verdict == PcbVerdict::Bounded);
    CHECK(pcb_check(GeneratorSet{quad(1.0)}).verdict == PcbVerdict::Escaping);
  }

  TEST_CASE("jbnq_first samples are the critical values plus a small disk") {
    const GeneratorSet gs(std::vector<Generator>{Generator::iterate(quad(-1.0), 2), Generator::iterate(Polynomial::monomial(0.25, 2), 2)});
    const auto r = pcb_check(gs);
    CHECK(r.verdict == PcbVerdict::Bounded);
    CHECK(has_point(r.samples, 0.0, 1e-9));
    CHECK(has_point(r.samples, -1.0, 1e-9));
    for (C s : r.samples) CHECK((std::abs(s) < 0.4 || std::abs(s + 1.0) <= 1e-9));
  }
}
