#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psg/generator.hpp"
#include "psg/interval.hpp"

namespace psg {

struct RegionSpec {
  enum class Kind { Disk, Annulus };
  Kind kind = Kind::Disk;
  Complex center{0.0, 0.0};
  double r_in = 0.0;  ///< 0 for disks
  double r_out = 1.0;

  static RegionSpec disk(Complex c, double r);
  static RegionSpec annulus(Complex c, double r_in, double r_out);
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

std::string to_string(const RegionSpec& r);

/// Conservative interval predicates on a box image.
bool may_meet(const Box& b, const RegionSpec& r);          ///< closed region
bool inside_open(const Box& b, const RegionSpec& r);       ///< b inside the open region
bool disjoint_closed(const Box& b, const RegionSpec& r);   ///< b misses the closed region
bool may_meet_outside_interior(const Box& b, const RegionSpec& r);

enum class Statement { ForwardInvariant, BackwardInvariant, DisjointPreimages, Disconnected };
enum class CertVerdict { Certified, Unknown };
std::string to_string(Statement s);
std::string to_string(CertVerdict v);

struct BoxRecord {
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
  int depth = 0;
  friend bool operator==(const BoxRecord&, const BoxRecord&) = default;
};

/// Verified preimage: the box holds exactly one solution of h(z) = target.
struct Witness {
  std::size_t generator = 0;
  Complex target;
  BoxRecord box;
  bool verified = false;
};

/// Per-generator evidence for backward invariance.
struct GeneratorCheck {
  std::size_t generator = 0;
  std::string method;  ///< "radial" or "boxes"
  bool passed = false;
  std::size_t boxes_processed = 0;
  int max_depth_used = 0;
  std::optional<BoxRecord> failing_box;
};

struct Certificate {
  Statement statement = Statement::ForwardInvariant;
  std::vector<RegionSpec> regions;
  GeneratorSet generators;
  double r_out_bound = 0.0;  ///< R_out for statements that cover {|z| <= R_out}
  int max_depth = 12;

  CertVerdict verdict = CertVerdict::Unknown;
  std::size_t boxes_processed = 0;
  int max_depth_used = 0;
  std::optional<BoxRecord> failing_box;
  std::string reason;

  std::vector<GeneratorCheck> checks;      ///< BackwardInvariant
  std::vector<Certificate> parts;          ///< Disconnected
  std::vector<Witness> witnesses;          ///< Disconnected

  bool certified() const noexcept { return verdict == CertVerdict::Certified; }
};

constexpr int kDefaultCertDepth = 12;

/// Every generator maps the closed disk D into the open disk.
Certificate cert_forward_invariance(const GeneratorSet& gs, const RegionSpec& D, int max_depth = kDefaultCertDepth);

/// h^{-1}(K) is contained in K for every generator h. Centered monomials use the
/// exact radial identity h^{-1}{|w| = s} = {|z| = (s/|a|)^{1/d}} with interval
/// radii; other generators need interval_eval(h, b) disjoint from K on every
/// box b meeting {|z| <= R_out} minus int(K), which proves the stronger strict
/// inclusion. The outer region |z| > R_out is handled by the doubling bound.
Certificate cert_backward_invariance(const GeneratorSet& gs, const RegionSpec& K, double R_out,
                                     int max_depth = kDefaultCertDepth);

/// h1^{-1}(K) and h2^{-1}(K) are disjoint: on every box of {|z| <= R_out} one
/// of the two images misses K.
Certificate cert_disjoint_preimages(const Generator& h1, const Generator& h2, const RegionSpec& K, double R_out,
                                    int max_depth = kDefaultCertDepth);

/// Backward invariance, pairwise disjoint preimages and one verified preimage
/// per generator.
Certificate cert_disconnected(const GeneratorSet& gs, const RegionSpec& K, double R_out,
                              int max_depth = kDefaultCertDepth);

/// For semigroups of centered monomials: an annulus around the circles
/// exp(M) whose generator preimages are pairwise disjoint. The affine hull of
/// M is widened by half the margin that keeps the first-level images apart.
/// Empty when the generators are not centered monomials or the first-level
/// images overlap (no separating annulus of this form exists).
std::optional<RegionSpec> suggest_annulus(const GeneratorSet& gs);

/// Krawczyk test around a numerical solution of h(z) = w.
std::optional<Box> verified_preimage(const Generator& h, Complex w, Complex guess);

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);
/// Re-runs the statement stored in json and returns the fresh serialization.
std::string replay_certificate(const std::string& json);

}  // namespace psg
