#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psg/generator.hpp"
#include "psg/postcritical.hpp"

namespace psg {

/// Real affine expansion x -> slope * x + intercept with slope = deg(h) and
/// intercept = log |a(h)|.
struct AffineExpansion {
  int slope = 2;
  double intercept = 0.0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
  friend bool operator==(const AffineExpansion&, const AffineExpansion&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x, double tol = 0.0) const noexcept { return x >= lo - tol && x <= hi + tol; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise disjoint closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Sorts and merges intervals whose gap is at most merge_tol.
  IntervalUnion(std::vector<Interval> parts, double merge_tol);

  const std::vector<Interval>& intervals() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool contains(double x, double tol = 0.0) const noexcept;
  /// Every interval of *this lies inside some interval of other (with slack tol).
  bool subset_of(const IntervalUnion& other, double tol = 0.0) const noexcept;
  /// Distance from x to the union (0 inside).
  double distance(double x) const noexcept;

 private:
  std::vector<Interval> parts_;
};

AffineExpansion psi(const Generator& g);
AffineExpansion psi(const Polynomial& p);
/// Composition in RA, (f o g)(x) = f(g(x)).
AffineExpansion compose(const AffineExpansion& f, const AffineExpansion& g);
/// The unique fixed point -t / (d - 1).
double fixed_point(const AffineExpansion& m);
/// [(lo - t)/d, (hi - t)/d]
Interval inverse_interval(const AffineExpansion& m, const Interval& I);

/// [alpha, beta]: hull of the generators' fixed points.
Interval fixed_point_hull(const GeneratorSet& gs);

/// I_depth of the inverse interval iteration started from the fixed-point hull.
/// Identical affine images are merged before iterating.
IntervalUnion m_set(const GeneratorSet& gs, int depth);

struct MComponentCount {
  std::size_t count = 0;
  bool cantor_flag = false;
};

MComponentCount count_m_components(const GeneratorSet& gs, int depth);

enum class ConnectivityRule { None, DegreeTwo, EqualFixedPoint, IntervalCovering };
std::string to_string(ConnectivityRule r);

struct ConnectivityResult {
  bool connected = false;
  ConnectivityRule rule = ConnectivityRule::None;
  /// Uncovered parts of [alpha, beta] when the covering test fails.
  std::vector<Interval> gaps;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sufficient conditions for connectivity of J(G), cheapest first. The verdict
/// argument must come from pcb_check on the same set and be Bounded.
ConnectivityResult connectivity_check(const GeneratorSet& gs, PcbVerdict pcb);
/// Runs pcb_check first.
ConnectivityResult connectivity_check(const GeneratorSet& gs);

/// Each generator replaced by its leading monomial a z^d.
GeneratorSet theta_generators(const GeneratorSet& gs);

}  // namespace psg
