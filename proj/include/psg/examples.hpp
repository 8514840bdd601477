#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psg/certify.hpp"
#include "psg/generator.hpp"
#include "psg/postcritical.hpp"

namespace psg {

enum class Connectivity { Connected, Disconnected, Cantor };
std::string to_string(Connectivity c);

/// A tagged expectation; the typed value lives in the matching ExampleSpec field.
struct Claim {
  std::string tag;   ///< pcb, connectivity, components, certificate, order, curve
  std::string note;  ///< what is expected and why
};

struct ForwardClaim {
  RegionSpec disk;
  std::vector<std::size_t> generators;  ///< indices that map the disk into itself
};

struct ExampleSpec {
  std::string name;
  std::string parameters;  ///< e.g. "n=2 eps=0.25 l=4"
  GeneratorSet generator_set;

  PcbVerdict pcb = PcbVerdict::Bounded;
  std::vector<Complex> postcritical_points;  ///< exact P* when known
  Connectivity connectivity = Connectivity::Disconnected;
  std::optional<std::size_t> component_count;
  bool components_growing = false;

  std::optional<ForwardClaim> forward;
  std::optional<RegionSpec> backward_region;  ///< K for backward invariance / disjoint preimages
  double r_out = 0.0;
  int cert_depth = 10;

  std::vector<std::size_t> min_generators;  ///< their Julia sets lie in the least component
  std::optional<std::size_t> max_generator;
  std::optional<std::size_t> non_jordan_generator;

  Complex view_center{0.0, 0.0};
  double view_half = 2.0;

  std::vector<Claim> claims;
};

class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ExampleSpec build_sy();
/// h(z) = c z^a (1 - z)^b, admissible when c (a/(a+b))^a (b/(a+b))^b <= 1.
ExampleSpec build_logistic(double c, int a, int b);
/// 2n generators: l-th iterates of z^2/j and (z - eps)^2/j + eps, j = 1..n.
ExampleSpec build_fincomp(int n, double eps, int l);
ExampleSpec build_jbnq_first();
/// {z^2 - 1, a z^2} with 0 < |a| < 0.1.
ExampleSpec build_jbnq(Complex a);
/// l-th iterates of z^2, (z - eps)^2 + eps and z^2 / 2.
ExampleSpec build_countprop_like(double eps, int l = 4);

/// Upper bound c0 on |a| for adjoining a (z - b)^d + b while keeping the
/// semigroup disconnected, given D(0, r) inside the filled set.
double constprop_threshold(const GeneratorSet& gs, double r, int d);

/// Iterate power shipped for the two-component family.
constexpr int kFincompIterate = 4;

/// Every example with its default parameters.
std::vector<ExampleSpec> shipped_examples();
/// Looks up a shipped example; throws std::invalid_argument for unknown names.
ExampleSpec example_by_name(const std::string& name);

}  // namespace psg
