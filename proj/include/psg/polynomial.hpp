#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psg {

using Complex = std::complex<double>;

/// Any intermediate modulus above this is treated as escape to infinity.
inline constexpr double kOverflowModulus = 1e150;

/// Largest total degree a composed map may reach.
inline constexpr int kMaxDegree = 1 << 16;

class PolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by compose() when a coefficient leaves the finite range.
class CoefficientOverflow : public std::overflow_error {
 public:
  CoefficientOverflow(int degree, const std::string& what)
      : std::overflow_error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// Raised by roots() when simultaneous iteration fails to meet the residual bound.
class RootError : public std::runtime_error {
 public:
  RootError(double best_residual, const std::string& what)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Complex polynomial with coefficients in ascending degree order.
///
/// The leading coefficient is exactly non-zero, so the stored degree is always
/// the true degree. Degree 0 is admitted only for non-zero constants (the
/// derivative of a linear map); the zero polynomial is not representable.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial monomial(Complex a, int d);
  /// a (z - b)^d + b
  static Polynomial shifted(Complex a, Complex b, int d);
  static Polynomial identity() { return Polynomial({Complex{0.0}, Complex{1.0}}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const noexcept { return coeffs_.back(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  /// True when every coefficient below the leading one is exactly zero.
  bool is_monomial() const noexcept;

  /// Plain Horner evaluation; no overflow screening.
  Complex operator()(Complex z) const noexcept {
    Complex acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);
/// p - w, used to turn preimage problems into root problems.
Polynomial shift_constant(const Polynomial& p, Complex w);

/// Horner evaluation; std::nullopt signals overflow (modulus above
/// kOverflowModulus at any step) and callers treat it as escaped.
std::optional<Complex> evaluate(const Polynomial& p, Complex z) noexcept;

/// p o q. Throws CoefficientOverflow naming the offending degree, or
/// PolynomialError if the degree cap is exceeded.
Polynomial compose(const Polynomial& p, const Polynomial& q);

/// Coefficient-wise derivative. Requires degree >= 1.
Polynomial derivative(const Polynomial& p);

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Cauchy bound 1 + max |c_k / c_d| on root moduli.
double root_bound(const Polynomial& p);

/// All roots counted with multiplicity. Closed forms through degree 2,
/// Aberth iteration above that. Roots closer than 1e-6 * root_bound(p) are
/// clustered into one entry. Throws RootError when a root's residual
/// exceeds tol * max|c_i| * max(1,|r|)^d after the iteration cap.
std::vector<Root> roots(const Polynomial& p, double tol = 1e-10);

/// Roots expanded by multiplicity, degree() entries in total.
std::vector<Complex> root_list(const Polynomial& p, double tol = 1e-10);

/// Finite critical values p(c), p'(c) = 0, deduplicated.
std::vector<Complex> critical_values_finite(const Polynomial& p);

/// All d solutions of p(z) = w, with multiplicity.
std::vector<Complex> preimages(const Polynomial& p, Complex w, double tol = 1e-10);

/// R = max(1, (2 + sum_{k<d} |c_k|) / |c_d|); |z| >= R implies |p(z)| >= 2|z|.
double escape_radius(const Polynomial& p);

std::string to_string(const Polynomial& p);

}  // namespace psg
