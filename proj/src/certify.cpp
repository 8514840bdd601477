#include "psg/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "psg/affine.hpp"
#include "psg/parallel.hpp"

namespace psg {

// ---------------------------------------------------------------- interval evaluation

Box interval_eval(const Polynomial& p, const Box& b) {
  const auto c = p.coeffs();
  Box acc(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * b + Box(c[k]);
  return acc;
}

Box interval_eval(const Generator& h, const Box& b) {
  Box v = b;
  for (const Polynomial& f : h.factors()) v = interval_eval(f, v);
  return v;
}

Box interval_derivative(const Generator& h, const Box& b) {
  Box v = b;
  Box d(Complex{1.0, 0.0});
  for (const Polynomial& f : h.factors()) {
    d = d * interval_eval(derivative(f), v);
    v = interval_eval(f, v);
  }
  return d;
}

Box interval_eval_centered(const Generator& h, const Box& b) {
  const Box m(b.mid());
  // h(z) - h(m) = (z - m) * mean of h' on the segment, and that mean lies in the convex box h'(b).
  return interval_eval(h, m) + interval_derivative(h, b) * (b - m);
}

Box interval_enclose(const Generator& h, const Box& b) {
  const Box a = interval_eval(h, b), c = interval_eval_centered(h, b);
  if (!c.finite()) return a;
  if (!a.finite()) return c;
  return {{std::max(a.re.lo, c.re.lo), std::min(a.re.hi, c.re.hi)}, {std::max(a.im.lo, c.im.lo), std::min(a.im.hi, c.im.hi)}};
}

Box reciprocal(const Box& b) {
  const Ival n = norm2(b);
  return {b.re / n, -(b.im / n)};
}

// ---------------------------------------------------------------- regions

RegionSpec RegionSpec::disk(Complex c, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("disk radius must be positive");
  return {Kind::Disk, c, 0.0, r};
}

RegionSpec RegionSpec::annulus(Complex c, double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out))
    throw std::invalid_argument("annulus radii must satisfy 0 < r_in < r_out");
  return {Kind::Annulus, c, r_in, r_out};
}

std::string to_string(const RegionSpec& r) {
  std::ostringstream os;
  os.precision(17);
  if (r.kind == RegionSpec::Kind::Disk)
    os << "disk(" << r.center.real() << (r.center.imag() < 0 ? "" : "+") << r.center.imag() << "i, " << r.r_out << ")";
  else
    os << "annulus(" << r.center.real() << (r.center.imag() < 0 ? "" : "+") << r.center.imag() << "i, " << r.r_in
       << ", " << r.r_out << ")";
  return os.str();
}

namespace {

bool is_annulus(const RegionSpec& r) { return r.kind == RegionSpec::Kind::Annulus; }
Ival rsq(double r) { return sqr(Ival(r)); }

}  // namespace

bool may_meet(const Box& b, const RegionSpec& r) {
  if (!b.finite()) return true;
  const Ival q = norm2(b, r.center);
  if (q.lo > rsq(r.r_out).hi) return false;
  if (is_annulus(r) && q.hi < rsq(r.r_in).lo) return false;
  return true;
}

bool inside_open(const Box& b, const RegionSpec& r) {
  if (!b.finite()) return false;
  const Ival q = norm2(b, r.center);
  if (!(q.hi < rsq(r.r_out).lo)) return false;
  if (is_annulus(r) && !(q.lo > rsq(r.r_in).hi)) return false;
  return true;
}

bool disjoint_closed(const Box& b, const RegionSpec& r) {
  if (!b.finite()) return false;
  const Ival q = norm2(b, r.center);
  if (q.lo > rsq(r.r_out).hi) return true;
  return is_annulus(r) && q.hi < rsq(r.r_in).lo;
}

bool may_meet_outside_interior(const Box& b, const RegionSpec& r) {
  if (!b.finite()) return true;
  const Ival q = norm2(b, r.center);
  if (q.hi >= rsq(r.r_out).lo) return true;
  return is_annulus(r) && q.lo <= rsq(r.r_in).hi;
}

std::string to_string(Statement s) {
  switch (s) {
    case Statement::ForwardInvariant: return "ForwardInvariant";
    case Statement::BackwardInvariant: return "BackwardInvariant";
    case Statement::DisjointPreimages: return "DisjointPreimages";
    case Statement::Disconnected: return "Disconnected";
  }
  return "?";
}

std::string to_string(CertVerdict v) { return v == CertVerdict::Certified ? "Certified" : "Unknown"; }

// ---------------------------------------------------------------- box cover

namespace {

struct CoverOutcome {
  bool ok = true;
  std::size_t processed = 0;
  int max_depth_used = 0;
  std::optional<BoxRecord> failing;
};

using BoxPred = std::function<bool(const Box&)>;

BoxRecord record(const Box& b, int depth) { return {b.re.lo, b.re.hi, b.im.lo, b.im.hi, depth}; }

/// Children in lexicographic order of (re.lo, im.lo).
std::array<Box, 4> split(const Box& b) {
  const double mr = 0.5 * (b.re.lo + b.re.hi), mi = 0.5 * (b.im.lo + b.im.hi);
  return {Box{{b.re.lo, mr}, {b.im.lo, mi}}, Box{{b.re.lo, mr}, {mi, b.im.hi}}, Box{{mr, b.re.hi}, {b.im.lo, mi}},
          Box{{mr, b.re.hi}, {mi, b.im.hi}}};
}

/// Depth-first, stops at the first leaf that fails at max_depth.
CoverOutcome explore(const Box& root, int root_depth, int max_depth, const BoxPred& relevant, const BoxPred& passes) {
  CoverOutcome out;
  std::vector<std::pair<Box, int>> stack{{root, root_depth}};
  while (!stack.empty()) {
    const auto [b, d] = stack.back();
    stack.pop_back();
    if (!relevant(b)) continue;
    ++out.processed;
    out.max_depth_used = std::max(out.max_depth_used, d);
    if (passes(b)) continue;
    if (d >= max_depth) {
      out.ok = false;
      out.failing = record(b, d);
      return out;
    }
    const auto kids = split(b);
    for (std::size_t i = 4; i-- > 0;) stack.emplace_back(kids[i], d + 1);
  }
  return out;
}

/// The 16 grandchildren of the root are explored independently so the result
/// is the same for any worker count.
CoverOutcome cover(const Box& root, int max_depth, const BoxPred& relevant, const BoxPred& passes) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (max_depth < 2) return explore(root, 0, max_depth, relevant, passes);
  std::vector<Box> seeds;
  for (const Box& c : split(root))
    for (const Box& g : split(c)) seeds.push_back(g);
  std::vector<CoverOutcome> parts(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { parts[i] = explore(seeds[i], 2, max_depth, relevant, passes); });
  CoverOutcome out;
  for (const CoverOutcome& p : parts) {
    out.processed += p.processed;
    out.max_depth_used = std::max(out.max_depth_used, p.max_depth_used);
    if (!p.ok && out.ok) {
      out.ok = false;
      out.failing = p.failing;
    }
  }
  return out;
}

Box centered_square(Complex c, double half) { return Box::around(c, half); }

bool origin_ball_meets(const Box& b, double R) { return norm2(b).lo <= rsq(R).hi; }

double min_abs(Ival v) { return v.lo > 0.0 ? v.lo : (v.hi < 0.0 ? -v.hi : 0.0); }

// Shrinks x to the offsets allowed by |x + i y| <= r given y; false if none.
bool clip_axis(Ival& x, Ival y, double r) {
  const double t2 = (rsq(r) - sqr(Ival(min_abs(y)))).hi;
  if (t2 < 0.0) return false;
  const double t = sqrt(Ival(t2)).hi;
  x = {std::max(x.lo, -t), std::min(x.hi, t)};
  return x.lo <= x.hi;
}

// Box hull of b and the closed disk D(c, r), rounded outward.
std::optional<Box> clip_to_disk(const Box& b, Complex c, double r) {
  Ival x = b.re - Ival(c.real()), y = b.im - Ival(c.imag());
  if (!clip_axis(x, y, r) || !clip_axis(y, x, r)) return std::nullopt;
  return Box(x + Ival(c.real()), y + Ival(c.imag()));
}

// h maps the part of b outside int(K), within |z| <= R, away from K. The
// part inside the hole of an annulus is tested on its clipped hull.
bool misses_K_outside_interior(const Generator& h, const Box& b, const RegionSpec& K, double R) {
  const Ival q = norm2(b, K.center);
  if (is_annulus(K) && q.lo <= rsq(K.r_in).hi) {
    const auto inner = clip_to_disk(b, K.center, K.r_in);
    if (inner && !disjoint_closed(interval_enclose(h, *inner), K)) return false;
  }
  if (q.hi >= rsq(K.r_out).lo) {
    const auto outer = clip_to_disk(b, {0.0, 0.0}, R);
    if (outer && !disjoint_closed(interval_enclose(h, *outer), K)) return false;
  }
  return true;
}

void apply(Certificate& c, const CoverOutcome& o) {
  c.boxes_processed += o.processed;
  c.max_depth_used = std::max(c.max_depth_used, o.max_depth_used);
  if (!o.ok && !c.failing_box) c.failing_box = o.failing;
}

/// |h| on the circle |z| = rho for a chain of monomials, as an interval.
Ival monomial_modulus(const Generator& h, Ival rho) {
  Ival m = rho;
  for (const Polynomial& f : h.factors()) {
    const Complex a = f.leading();
    const Ival abs_a = a.imag() == 0.0 ? Ival(std::abs(a.real())) : sqrt(sqr(Ival(a.real())) + sqr(Ival(a.imag())));
    Ival p(1.0), base = m;
    for (int e = f.degree(); e > 0; e >>= 1) {
      if (e & 1) p = p * base;
      base = base * base;
    }
    m = abs_a * p;
  }
  return m;
}

std::string outer_lemma_failure(const std::vector<const Generator*>& hs, const RegionSpec& K, double R_out) {
  for (const Generator* h : hs)
    if (!(R_out >= h->escape_radius()))
      return "outer escape lemma: R_out below the escape radius of " + (h->label().empty() ? std::string("a generator") : h->label());
  // |z| > R_out gives |h(z)| > 2 R_out, which must clear K.
  const Ival far = Ival(2.0) * Ival(R_out);
  const Ival reach = sqrt(sqr(Ival(K.center.real())) + sqr(Ival(K.center.imag()))) + Ival(K.r_out);
  if (!(far.lo > reach.hi)) return "outer escape lemma: 2 R_out does not clear K";
  return {};
}

}  // namespace

// ---------------------------------------------------------------- certificates

Certificate cert_forward_invariance(const GeneratorSet& gs, const RegionSpec& D, int max_depth) {
  if (D.kind != RegionSpec::Kind::Disk) throw std::invalid_argument("forward invariance expects a disk");
  Certificate c;
  c.statement = Statement::ForwardInvariant;
  c.regions = {D};
  c.generators = gs;
  c.max_depth = max_depth;
  const auto o = cover(
      centered_square(D.center, D.r_out), max_depth, [&](const Box& b) { return may_meet(b, D); },
      [&](const Box& b) {
        for (const Generator& h : gs)
          if (!inside_open(interval_enclose(h, b), D)) return false;
        return true;
      });
  apply(c, o);
  c.verdict = o.ok ? CertVerdict::Certified : CertVerdict::Unknown;
  if (!o.ok) c.reason = "image of the failing box is not inside the open disk";
  return c;
}

Certificate cert_backward_invariance(const GeneratorSet& gs, const RegionSpec& K, double R_out, int max_depth) {
  if (!(R_out >= 2.0 * gs.max_escape_radius()) || !(R_out > K.r_out))
    throw std::invalid_argument("backward invariance needs R_out >= 2 * max escape radius and R_out > r_out");
  Certificate c;
  c.statement = Statement::BackwardInvariant;
  c.regions = {K};
  c.generators = gs;
  c.r_out_bound = R_out;
  c.max_depth = max_depth;

  std::vector<const Generator*> hs;
  for (const Generator& h : gs) hs.push_back(&h);
  std::string why = outer_lemma_failure(hs, K, R_out);

  const bool centered = K.center == Complex{0.0, 0.0};
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const Generator& h = gs[i];
    GeneratorCheck chk;
    chk.generator = i;
    if (centered && h.is_monomial()) {
      chk.method = "radial";
      if (K.kind == RegionSpec::Kind::Annulus)
        chk.passed = monomial_modulus(h, Ival(K.r_in)).hi <= K.r_in && monomial_modulus(h, Ival(K.r_out)).lo >= K.r_out;
      else
        chk.passed = monomial_modulus(h, Ival(K.r_out)).lo >= K.r_out;
    } else {
      chk.method = "boxes";
      const auto o = cover(
          centered_square({0.0, 0.0}, R_out), max_depth,
          [&](const Box& b) { return origin_ball_meets(b, R_out) && may_meet_outside_interior(b, K); },
          [&](const Box& b) { return misses_K_outside_interior(h, b, K, R_out); });
      chk.passed = o.ok;
      chk.boxes_processed = o.processed;
      chk.max_depth_used = o.max_depth_used;
      chk.failing_box = o.failing;
      apply(c, o);
    }
    if (!chk.passed && why.empty())
      why = "preimage of K under generator " + std::to_string(i) + " is not contained in K (" + chk.method + " test)";
    c.checks.push_back(std::move(chk));
  }
  c.verdict = why.empty() ? CertVerdict::Certified : CertVerdict::Unknown;
  c.reason = why;
  return c;
}

Certificate cert_disjoint_preimages(const Generator& h1, const Generator& h2, const RegionSpec& K, double R_out,
                                    int max_depth) {
  Certificate c;
  c.statement = Statement::DisjointPreimages;
  c.regions = {K};
  Generator a = h1, b = h2;
  if (a.label().empty()) a.set_label("h1");
  if (b.label().empty()) b.set_label("h2");
  if (a.label() == b.label()) b.set_label(b.label() + "'");
  c.generators = GeneratorSet(std::vector<Generator>{a, b});
  c.r_out_bound = R_out;
  c.max_depth = max_depth;
  std::string why = outer_lemma_failure({&h1, &h2}, K, R_out);
  const auto o = cover(
      centered_square({0.0, 0.0}, R_out), max_depth, [&](const Box& bx) { return origin_ball_meets(bx, R_out); },
      [&](const Box& bx) {
        return disjoint_closed(interval_enclose(h1, bx), K) || disjoint_closed(interval_enclose(h2, bx), K);
      });
  apply(c, o);
  if (!o.ok && why.empty()) why = "both images of the failing box may meet K";
  c.verdict = why.empty() ? CertVerdict::Certified : CertVerdict::Unknown;
  c.reason = why;
  return c;
}

std::optional<Box> verified_preimage(const Generator& h, Complex w, Complex guess) {
  Complex z = guess;
  for (int it = 0; it < 20; ++it) {
    const Complex d = h.derivative_at(z);
    if (d == Complex{0.0, 0.0}) break;
    const Complex step = (h.apply(z) - w) / d;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  const Complex dz = h.derivative_at(z);
  if (dz == Complex{0.0, 0.0} || !std::isfinite(std::abs(dz))) return std::nullopt;
  const Box Y(1.0 / dz);
  const Box one(Complex{1.0, 0.0});
  for (double scale : {1e-10, 1e-8, 1e-6, 1e-4}) {
    const Box X = Box::around(z, scale * std::max(1.0, std::abs(z)));
    const Box residual = interval_eval(h, Box(z)) - Box(w);
    const Box Kx = Box(z) - Y * residual + (one - Y * interval_derivative(h, X)) * (X - Box(z));
    if (Kx.finite() && X.contains_interior(Kx)) return Kx;
  }
  return std::nullopt;
}

std::optional<RegionSpec> suggest_annulus(const GeneratorSet& gs) {
  if (gs.size() < 2) return std::nullopt;
  for (const Generator& g : gs)
    for (const Polynomial& f : g.factors())
      if (!f.is_monomial()) return std::nullopt;
  struct Image {
    double lo, hi, slope;
  };
  std::vector<AffineExpansion> maps;
  for (const Generator& g : gs) maps.push_back(psi(g));
  double a = fixed_point(maps.front()), b = a;
  for (const AffineExpansion& m : maps) {
    a = std::min(a, fixed_point(m));
    b = std::max(b, fixed_point(m));
  }
  std::vector<Image> im;
  for (const AffineExpansion& m : maps) {
    const Interval I = inverse_interval(m, {a, b});
    im.push_back({I.lo, I.hi, static_cast<double>(m.slope)});
  }
  std::sort(im.begin(), im.end(), [](const Image& x, const Image& y) { return x.lo < y.lo; });
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < im.size(); ++k) {
    const double gap = im[k + 1].lo - im[k].hi;
    if (!(gap > 0.0)) return std::nullopt;
    // Widening the hull by delta widens each image by delta / slope.
    delta = std::min(delta, gap / (1.0 / im[k].slope + 1.0 / im[k + 1].slope));
  }
  delta *= 0.5;
  return RegionSpec::annulus({0.0, 0.0}, std::exp(a - delta), std::exp(b + delta));
}

Certificate cert_disconnected(const GeneratorSet& gs, const RegionSpec& K, double R_out, int max_depth) {
  if (gs.size() < 2) throw std::invalid_argument("disconnectedness certificate needs at least two generators");
  Certificate c;
  c.statement = Statement::Disconnected;
  c.regions = {K};
  c.generators = gs;
  c.r_out_bound = R_out;
  c.max_depth = max_depth;

  c.parts.push_back(cert_backward_invariance(gs, K, R_out, max_depth));
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      c.parts.push_back(cert_disjoint_preimages(gs[i], gs[j], K, R_out, max_depth));

  const Complex target = K.center + Complex{K.kind == RegionSpec::Kind::Annulus ? 0.5 * (K.r_in + K.r_out) : 0.0, 0.0};
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Witness wt;
    wt.generator = i;
    wt.target = target;
    const auto pre = gs[i].preimages(target);
    if (const auto box = verified_preimage(gs[i], target, pre.front())) {
      wt.verified = true;
      wt.box = record(*box, 0);
    }
    c.witnesses.push_back(wt);
  }

  std::string why;
  for (const Certificate& p : c.parts) {
    c.boxes_processed += p.boxes_processed;
    c.max_depth_used = std::max(c.max_depth_used, p.max_depth_used);
    if (!p.certified() && why.empty()) {
      why = to_string(p.statement) + " part not certified: " + p.reason;
      c.failing_box = p.failing_box;
    }
  }
  for (const Witness& wt : c.witnesses)
    if (!wt.verified && why.empty()) why = "no verified preimage for generator " + std::to_string(wt.generator);
  c.verdict = why.empty() ? CertVerdict::Certified : CertVerdict::Unknown;
  c.reason = why;
  return c;
}

// ---------------------------------------------------------------- JSON

namespace {

using detail::ojson;

ojson region_json(const RegionSpec& r) {
  ojson j;
  j["kind"] = r.kind == RegionSpec::Kind::Disk ? "disk" : "annulus";
  j["center"] = detail::complex_json(r.center);
  if (r.kind == RegionSpec::Kind::Annulus) j["r_in"] = r.r_in;
  j["r_out"] = r.r_out;
  return j;
}

RegionSpec region_from(const ojson& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Complex c = detail::complex_from(j.at("center"));
  if (kind == "disk") return RegionSpec::disk(c, j.at("r_out").get<double>());
  if (kind == "annulus") return RegionSpec::annulus(c, j.at("r_in").get<double>(), j.at("r_out").get<double>());
  throw std::invalid_argument("unknown region kind: " + kind);
}

ojson box_json(const std::optional<BoxRecord>& b) {
  if (!b) return nullptr;
  return ojson{{"re", {b->re_lo, b->re_hi}}, {"im", {b->im_lo, b->im_hi}}, {"depth", b->depth}};
}

ojson to_ojson(const Certificate& c) {
  ojson j;
  j["statement"] = to_string(c.statement);
  j["generators"] = detail::generator_set_json(c.generators);
  ojson regs = ojson::array();
  for (const RegionSpec& r : c.regions) regs.push_back(region_json(r));
  j["regions"] = std::move(regs);
  j["r_out_bound"] = c.r_out_bound;
  j["max_depth"] = c.max_depth;
  j["verdict"] = to_string(c.verdict);
  j["boxes_processed"] = c.boxes_processed;
  j["max_depth_used"] = c.max_depth_used;
  j["failing_box"] = box_json(c.failing_box);
  j["reason"] = c.reason;
  if (!c.checks.empty()) {
    ojson a = ojson::array();
    for (const GeneratorCheck& k : c.checks)
      a.push_back({{"generator", k.generator},
                   {"method", k.method},
                   {"passed", k.passed},
                   {"boxes_processed", k.boxes_processed},
                   {"max_depth_used", k.max_depth_used},
                   {"failing_box", box_json(k.failing_box)}});
    j["checks"] = std::move(a);
  }
  if (!c.parts.empty()) {
    ojson a = ojson::array();
    for (const Certificate& p : c.parts) a.push_back(to_ojson(p));
    j["parts"] = std::move(a);
  }
  if (!c.witnesses.empty()) {
    ojson a = ojson::array();
    for (const Witness& w : c.witnesses)
      a.push_back({{"generator", w.generator},
                   {"target", detail::complex_json(w.target)},
                   {"verified", w.verified},
                   {"box", w.verified ? box_json(w.box) : ojson(nullptr)}});
    j["witnesses"] = std::move(a);
  }
  return j;
}

Statement statement_from(const std::string& s) {
  for (Statement st : {Statement::ForwardInvariant, Statement::BackwardInvariant, Statement::DisjointPreimages,
                       Statement::Disconnected})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown certificate statement: " + s);
}

std::optional<BoxRecord> box_from(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  BoxRecord b;
  b.re_lo = j.at("re").at(0).get<double>();
  b.re_hi = j.at("re").at(1).get<double>();
  b.im_lo = j.at("im").at(0).get<double>();
  b.im_hi = j.at("im").at(1).get<double>();
  b.depth = j.at("depth").get<int>();
  return b;
}

CertVerdict verdict_from(const std::string& s) {
  if (s == "Certified") return CertVerdict::Certified;
  if (s == "Unknown") return CertVerdict::Unknown;
  throw std::invalid_argument("unknown certificate verdict: " + s);
}

Certificate from_ojson(const ojson& j) {
  Certificate c;
  c.statement = statement_from(j.at("statement").get<std::string>());
  c.generators = detail::generator_set_from(j.at("generators"));
  for (const auto& r : j.at("regions")) c.regions.push_back(region_from(r));
  if (c.regions.empty()) throw std::invalid_argument("certificate lists no region");
  c.r_out_bound = j.at("r_out_bound").get<double>();
  c.max_depth = j.at("max_depth").get<int>();
  c.verdict = verdict_from(j.at("verdict").get<std::string>());
  c.boxes_processed = j.at("boxes_processed").get<std::size_t>();
  c.max_depth_used = j.at("max_depth_used").get<int>();
  c.failing_box = box_from(j.value("failing_box", ojson(nullptr)));
  c.reason = j.value("reason", std::string{});
  if (j.contains("checks"))
    for (const auto& k : j.at("checks")) {
      GeneratorCheck g;
      g.generator = k.at("generator").get<std::size_t>();
      g.method = k.at("method").get<std::string>();
      g.passed = k.at("passed").get<bool>();
      g.boxes_processed = k.at("boxes_processed").get<std::size_t>();
      g.max_depth_used = k.at("max_depth_used").get<int>();
      g.failing_box = box_from(k.at("failing_box"));
      c.checks.push_back(std::move(g));
    }
  if (j.contains("parts"))
    for (const auto& p : j.at("parts")) c.parts.push_back(from_ojson(p));
  if (j.contains("witnesses"))
    for (const auto& w : j.at("witnesses")) {
      Witness x;
      x.generator = w.at("generator").get<std::size_t>();
      x.target = detail::complex_from(w.at("target"));
      x.verified = w.at("verified").get<bool>();
      if (const auto b = box_from(w.at("box"))) x.box = *b;
      c.witnesses.push_back(x);
    }
  return c;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) { return to_ojson(c).dump(2) + "\n"; }

Certificate certificate_from_json(const std::string& text) {
  try {
    return from_ojson(ojson::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate JSON: ") + e.what());
  }
}

std::string replay_certificate(const std::string& json) {
  const Certificate in = certificate_from_json(json);
  const RegionSpec& r = in.regions.front();
  Certificate out;
  switch (in.statement) {
    case Statement::ForwardInvariant: out = cert_forward_invariance(in.generators, r, in.max_depth); break;
    case Statement::BackwardInvariant:
      out = cert_backward_invariance(in.generators, r, in.r_out_bound, in.max_depth);
      break;
    case Statement::DisjointPreimages:
      if (in.generators.size() != 2) throw std::invalid_argument("disjoint-preimage certificate needs two generators");
      out = cert_disjoint_preimages(in.generators[0], in.generators[1], r, in.r_out_bound, in.max_depth);
      break;
    case Statement::Disconnected: out = cert_disconnected(in.generators, r, in.r_out_bound, in.max_depth); break;
  }
  return certificate_to_json(out);
}

}  // namespace psg
