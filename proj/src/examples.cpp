#include "psg/examples.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace psg {

std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "Connected";
    case Connectivity::Disconnected: return "Disconnected";
    case Connectivity::Cantor: return "Cantor";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

GeneratorSet make_set(std::vector<Generator> g) { return GeneratorSet(std::move(g)); }

}  // namespace

ExampleSpec build_sy() {
  ExampleSpec e;
  e.name = "sy";
  e.generator_set = make_set({Generator(Polynomial::monomial(1.0, 3), "z^3"), Generator(Polynomial::monomial(0.25, 2), "z^2/4")});
  e.postcritical_points = {Complex{0.0, 0.0}};
  e.connectivity = Connectivity::Cantor;
  e.components_growing = true;
  e.backward_region = RegionSpec::annulus({0.0, 0.0}, 0.9, 4.5);
  e.r_out = 16.0;
  e.min_generators = {0};
  e.max_generator = 1;
  e.view_half = 4.4;
  e.claims = {
      {"pcb", "the only finite critical value is 0, which both generators fix"},
      {"connectivity", "Cantor family of round circles between |z| = 1 and |z| = 4"},
      {"components", "rendered component count grows with resolution"},
      {"certificate", "annulus 0.9 <= |z| <= 4.5 is backward invariant with disjoint preimages"},
      {"order", "unit circle is the least component, |z| = 4 the greatest"},
  };
  return e;
}

ExampleSpec build_logistic(double c, int a, int b) {
  if (!(c > 0.0) || a < 1 || b < 1) throw std::invalid_argument("logistic family needs c > 0 and integers a, b >= 1");
  const double s = a + b;
  const double bound = c * std::pow(a / s, a) * std::pow(b / s, b);
  if (bound > 1.0)
    throw AdmissibilityError("c (a/(a+b))^a (b/(a+b))^b = " + fmt(bound) + " exceeds 1, so [0,1] is not invariant");
  Polynomial p({Complex{c}});
  const Polynomial z = Polynomial::identity();
  const Polynomial one_minus_z({Complex{1.0}, Complex{-1.0}});
  for (int i = 0; i < a; ++i) p = p * z;
  for (int i = 0; i < b; ++i) p = p * one_minus_z;

  ExampleSpec e;
  e.name = "logistic";
  e.parameters = "c=" + fmt(c) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
  e.generator_set = make_set({Generator(p, "logistic")});
  e.connectivity = Connectivity::Connected;
  e.view_center = {0.5, 0.0};
  e.view_half = 1.0;
  e.claims = {
      {"pcb", "[0,1] is forward invariant, so every critical value stays in [0,1]"},
      {"connectivity", "a single polynomial with bounded critical orbits has connected Julia set"},
  };
  return e;
}

ExampleSpec build_fincomp(int n, double eps, int l) {
  if (n < 2) throw std::invalid_argument("fincomp needs n >= 2");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("fincomp needs 0 < eps < 1/2");
  if (l < 1) throw std::invalid_argument("fincomp needs l >= 1");
  std::vector<Generator> gens;
  for (int j = 1; j <= n; ++j) {
    const std::string js = std::to_string(j);
    gens.push_back(Generator::iterate(Polynomial::monomial(1.0 / j, 2), l, "alpha" + js));
    gens.push_back(Generator::iterate(Polynomial::shifted(1.0 / j, eps, 2), l, "beta" + js));
  }
  ExampleSpec e;
  e.name = "fincomp";
  e.parameters = "n=" + std::to_string(n) + " eps=" + fmt(eps) + " l=" + std::to_string(l);
  e.generator_set = make_set(std::move(gens));
  e.connectivity = Connectivity::Disconnected;
  e.component_count = static_cast<std::size_t>(n);
  e.min_generators = {0, 1};
  e.view_half = 1.1 * n + 0.2;
  e.claims = {
      {"pcb", "critical values 0 and eps stay in a small disk around the origin"},
      {"components", "exactly n components once the iterate power l is large enough"},
      {"order", "the j = 1 pair lies in the least component"},
  };
  return e;
}

ExampleSpec build_jbnq_first() {
  const Polynomial g1({Complex{-1.0}, Complex{0.0}, Complex{1.0}});
  const Polynomial g2 = Polynomial::monomial(0.25, 2);
  ExampleSpec e;
  e.name = "jbnq_first";
  e.generator_set = make_set({Generator::iterate(g1, 2, "g1^2"), Generator::iterate(g2, 2, "g2^2")});
  e.postcritical_points = {Complex{0.0, 0.0}, Complex{-1.0, 0.0}};
  e.connectivity = Connectivity::Disconnected;
  e.forward = ForwardClaim{RegionSpec::disk({0.0, 0.0}, 0.4), {0, 1}};
  e.backward_region = RegionSpec::annulus({0.0, 0.0}, 0.4, 4.0);
  e.r_out = 16.0;
  e.cert_depth = 10;
  e.min_generators = {0};
  e.max_generator = 1;
  e.non_jordan_generator = 0;
  e.view_half = 4.4;
  e.claims = {
      {"pcb", "orbit of the critical values stays in {0, -1} and a small disk"},
      {"certificate", "D(0, 0.4) is forward invariant; 0.4 <= |z| <= 4 is backward invariant with disjoint preimages"},
      {"connectivity", "the certificates imply a disconnected Julia set"},
      {"order", "the least component carries the basilica-like Julia set of g1^2"},
      {"curve", "fibers with enough g2^2 are Jordan curves; the constant g1^2 fiber is not"},
  };
  return e;
}

ExampleSpec build_jbnq(Complex a) {
  const double m = std::abs(a);
  if (!(m > 0.0 && m < 0.1)) throw std::invalid_argument("jbnq needs 0 < |a| < 0.1, got |a| = " + fmt(m));
  ExampleSpec e;
  e.name = "jbnq";
  std::ostringstream ps;
  ps << "a=" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
  e.parameters = ps.str();
  e.generator_set =
      make_set({Generator(Polynomial({Complex{-1.0}, Complex{0.0}, Complex{1.0}}), "h1"), Generator(Polynomial::monomial(a, 2), "h2")});
  e.connectivity = Connectivity::Connected;
  e.forward = ForwardClaim{RegionSpec::disk({0.0, 0.0}, 0.2), {1}};
  e.view_half = 1.1 / m;
  e.claims = {
      {"pcb", "critical orbits stay bounded"},
      {"connectivity", "all generators quadratic with bounded postcritical set, hence connected"},
      {"certificate", "h2 maps D(0, 0.2) into itself"},
  };
  return e;
}

ExampleSpec build_countprop_like(double eps, int l) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("countprop needs 0 < eps < 1/2");
  if (l < 1) throw std::invalid_argument("countprop needs l >= 1");
  ExampleSpec e;
  e.name = "countprop";
  e.parameters = "eps=" + fmt(eps) + " l=" + std::to_string(l);
  e.generator_set = make_set({Generator::iterate(Polynomial::monomial(1.0, 2), l, "alpha1"),
                              Generator::iterate(Polynomial::shifted(1.0, eps, 2), l, "alpha2"),
                              Generator::iterate(Polynomial::monomial(0.5, 2), l, "alpha3")});
  e.connectivity = Connectivity::Disconnected;
  e.components_growing = true;
  e.min_generators = {0, 1};
  e.max_generator = 2;
  e.view_half = 2.4;
  e.claims = {
      {"pcb", "critical values 0 and eps stay near the unit disk"},
      {"components", "countably many components; at finite scale the count keeps growing"},
      {"order", "J(alpha3) is the greatest component"},
  };
  return e;
}

double constprop_threshold(const GeneratorSet& gs, double r, int d) {
  if (d < 2) throw std::invalid_argument("constprop needs d >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("constprop needs r > 0");
  if (gs.size() == 0) throw std::invalid_argument("constprop needs at least one generator");
  double best = std::numeric_limits<double>::infinity();
  for (const Generator& h : gs) {
    const int dh = h.degree();
    if (d == 2 && dh == 2) throw std::invalid_argument("degree pair (d, deg h) = (2, 2) is excluded");
    const double k = static_cast<double>(d) * (d - 1) * dh / (d + dh - dh * d);
    const double log_a = h.log_abs_leading();
    const double inner = std::log(2.0) - (log_a - std::log(2.0)) / dh - std::log(r) / d;
    best = std::min(best, std::exp(k * inner));
  }
  return best;
}

std::vector<ExampleSpec> shipped_examples() {
  return {build_sy(),
          build_logistic(4.0, 1, 1),
          build_fincomp(2, 0.25, kFincompIterate),
          build_jbnq_first(),
          build_jbnq(Complex{0.05, 0.0}),
          build_countprop_like(0.25, 4)};
}

ExampleSpec example_by_name(const std::string& name) {
  for (ExampleSpec& e : shipped_examples())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace psg
