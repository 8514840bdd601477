#include "psg/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace psg {

IntervalUnion::IntervalUnion(std::vector<Interval> parts, double merge_tol) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const Interval& I : parts) {
    if (!parts_.empty() && I.lo - parts_.back().hi <= merge_tol) {
      parts_.back().hi = std::max(parts_.back().hi, I.hi);
    } else {
      parts_.push_back(I);
    }
  }
}

bool IntervalUnion::contains(double x, double tol) const noexcept {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x, [](double v, const Interval& I) { return v < I.lo; });
  if (it != parts_.end() && it->contains(x, tol)) return true;
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x, tol);
}

bool IntervalUnion::subset_of(const IntervalUnion& other, double tol) const noexcept {
  for (const Interval& I : parts_) {
    const bool inside = std::any_of(other.parts_.begin(), other.parts_.end(), [&](const Interval& J) {
      return I.lo >= J.lo - tol && I.hi <= J.hi + tol;
    });
    if (!inside) return false;
  }
  return true;
}

double IntervalUnion::distance(double x) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& I : parts_) {
    if (I.contains(x)) return 0.0;
    best = std::min({best, std::abs(x - I.lo), std::abs(x - I.hi)});
  }
  return best;
}

AffineExpansion psi(const Generator& g) { return {g.degree(), g.log_abs_leading()}; }

AffineExpansion psi(const Polynomial& p) {
  if (p.degree() < 2) throw PolynomialError("psi requires degree >= 2");
  return {p.degree(), std::log(std::abs(p.leading()))};
}

AffineExpansion compose(const AffineExpansion& f, const AffineExpansion& g) {
  return {f.slope * g.slope, f.slope * g.intercept + f.intercept};
}

// + 0.0 turns -0 into 0 for log|a| = 0.
double fixed_point(const AffineExpansion& m) { return -m.intercept / (m.slope - 1) + 0.0; }

Interval inverse_interval(const AffineExpansion& m, const Interval& I) {
  return {(I.lo - m.intercept) / m.slope, (I.hi - m.intercept) / m.slope};
}

Interval fixed_point_hull(const GeneratorSet& gs) {
  Interval hull{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Generator& g : gs) {
    const double x = fixed_point(psi(g));
    hull.lo = std::min(hull.lo, x);
    hull.hi = std::max(hull.hi, x);
  }
  return hull;
}

namespace {

std::vector<AffineExpansion> distinct_expansions(const GeneratorSet& gs) {
  std::vector<AffineExpansion> out;
  for (const Generator& g : gs) {
    const AffineExpansion m = psi(g);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

IntervalUnion m_set(const GeneratorSet& gs, int depth) {
  if (depth < 0) throw std::invalid_argument("m_set: depth must be >= 0");
  const Interval hull = fixed_point_hull(gs);
  const double tol = 1e-12 * hull.width();
  const auto maps = distinct_expansions(gs);
  IntervalUnion cur({hull}, tol);
  for (int n = 0; n < depth; ++n) {
    std::vector<Interval> next;
    next.reserve(cur.size() * maps.size());
    for (const AffineExpansion& m : maps)
      for (const Interval& I : cur.intervals()) next.push_back(inverse_interval(m, I));
    cur = IntervalUnion(std::move(next), tol);
  }
  return cur;
}

MComponentCount count_m_components(const GeneratorSet& gs, int depth) {
  if (depth < 1) throw std::invalid_argument("count_m_components: depth must be >= 1");
  const std::size_t prev = m_set(gs, depth - 1).size();
  const std::size_t cur = m_set(gs, depth).size();
  return {cur, cur > prev};
}

std::string to_string(ConnectivityRule r) {
  switch (r) {
    case ConnectivityRule::None: return "none";
    case ConnectivityRule::DegreeTwo: return "degree-two";
    case ConnectivityRule::EqualFixedPoint: return "equal-fixed-point";
    case ConnectivityRule::IntervalCovering: return "interval-covering";
  }
  return "?";
}

ConnectivityResult connectivity_check(const GeneratorSet& gs, PcbVerdict pcb) {
  if (pcb != PcbVerdict::Bounded) {
    throw PreconditionError("connectivity_check requires a postcritically bounded set (pcb verdict " +
                            to_string(pcb) + ")");
  }
  ConnectivityResult res;
  if (std::all_of(gs.begin(), gs.end(), [](const Generator& g) { return g.degree() == 2; })) {
    res.connected = true;
    res.rule = ConnectivityRule::DegreeTwo;
    return res;
  }
  const double x0 = fixed_point(psi(gs[0]));
  if (std::all_of(gs.begin(), gs.end(), [&](const Generator& g) { return std::abs(fixed_point(psi(g)) - x0) <= 1e-12; })) {
    res.connected = true;
    res.rule = ConnectivityRule::EqualFixedPoint;
    return res;
  }
  // Covering [alpha, beta] by the inverse images, exact endpoint comparisons.
  const Interval hull = fixed_point_hull(gs);
  std::vector<Interval> imgs;
  for (const Generator& g : gs) imgs.push_back(inverse_interval(psi(g), hull));
  std::sort(imgs.begin(), imgs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double reach = hull.lo;
  for (const Interval& I : imgs) {
    if (I.lo > reach && reach < hull.hi) res.gaps.push_back({reach, std::min(I.lo, hull.hi)});
    reach = std::max(reach, I.hi);
  }
  if (reach < hull.hi) res.gaps.push_back({reach, hull.hi});
  if (res.gaps.empty()) {
    res.connected = true;
    res.rule = ConnectivityRule::IntervalCovering;
  }
  return res;
}

ConnectivityResult connectivity_check(const GeneratorSet& gs) { return connectivity_check(gs, pcb_check(gs).verdict); }

GeneratorSet theta_generators(const GeneratorSet& gs) {
  std::vector<Generator> out;
  for (const Generator& g : gs) {
    out.emplace_back(Polynomial::monomial(g.leading(), g.degree()), g.label().empty() ? "" : "theta(" + g.label() + ")");
  }
  return GeneratorSet(std::move(out));
}

}  // namespace psg
