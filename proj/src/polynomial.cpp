#include "psg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace psg {

namespace {

void trim(std::vector<Complex>& c) {
  while (c.size() > 1 && c.back() == Complex{0.0}) c.pop_back();
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw PolynomialError("polynomial needs at least one coefficient");
  for (const Complex& c : coeffs_) {
    if (!finite(c)) throw PolynomialError("polynomial coefficient is not finite");
  }
  if (coeffs_.back() == Complex{0.0}) {
    throw PolynomialError("leading coefficient must be non-zero (trailing zero above degree " +
                          std::to_string(coeffs_.size() - 1) + ")");
  }
}

Polynomial Polynomial::monomial(Complex a, int d) {
  if (d < 0) throw PolynomialError("negative degree");
  std::vector<Complex> c(static_cast<std::size_t>(d) + 1, Complex{0.0});
  c.back() = a;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(Complex a, Complex b, int d) {
  const Polynomial lin({-b, Complex{1.0}});
  Polynomial acc({a});
  for (int i = 0; i < d; ++i) acc = acc * lin;
  return shift_constant(acc, -b);
}

bool Polynomial::is_monomial() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end() - 1, [](Complex c) { return c == Complex{0.0}; });
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<Complex> c(std::max(a.size(), b.size()), Complex{0.0});
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  if (c.size() == 1 && c[0] == Complex{0.0}) throw PolynomialError("sum is the zero polynomial");
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<Complex> neg(q.coeffs().begin(), q.coeffs().end());
  for (auto& c : neg) c = -c;
  return p + Polynomial(std::move(neg));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<Complex> c(a.size() + b.size() - 1, Complex{0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return Polynomial(std::move(c));
}

Polynomial shift_constant(const Polynomial& p, Complex w) {
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  c[0] -= w;
  if (c.size() == 1 && c[0] == Complex{0.0}) throw PolynomialError("p - w is the zero polynomial");
  return Polynomial(std::move(c));
}

std::optional<Complex> evaluate(const Polynomial& p, Complex z) noexcept {
  const auto c = p.coeffs();
  Complex acc = c.back();
  constexpr double lim = kOverflowModulus * kOverflowModulus;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * z + c[k];
    const double n = std::norm(acc);
    if (!(n <= lim)) return std::nullopt;
  }
  return acc;
}

Polynomial compose(const Polynomial& p, const Polynomial& q) {
  const long long deg = static_cast<long long>(p.degree()) * q.degree();
  if (deg > kMaxDegree) {
    throw PolynomialError("composed degree " + std::to_string(deg) + " exceeds cap " +
                          std::to_string(kMaxDegree));
  }
  const auto pc = p.coeffs();
  std::vector<Complex> acc{pc.back()};
  const auto qc = q.coeffs();
  for (std::size_t k = pc.size() - 1; k-- > 0;) {
    std::vector<Complex> next(acc.size() + qc.size() - 1, Complex{0.0});
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < qc.size(); ++j) next[i + j] += acc[i] * qc[j];
    next[0] += pc[k];
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (!finite(next[i]) || std::abs(next[i]) > kOverflowModulus) {
        throw CoefficientOverflow(static_cast<int>(i),
                                  "coefficient of degree " + std::to_string(i) + " overflowed in composition");
      }
    }
    acc = std::move(next);
  }
  trim(acc);
  return Polynomial(std::move(acc));
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) throw PolynomialError("derivative requires degree >= 1");
  const auto c = p.coeffs();
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

double root_bound(const Polynomial& p) {
  const auto c = p.coeffs();
  const double lead = std::abs(c.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]) / lead);
  return 1.0 + m;
}

namespace {

double residual_scale(const Polynomial& p, Complex r) {
  double m = 0.0;
  for (const Complex& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m * std::pow(std::max(1.0, std::abs(r)), p.degree());
}

// Roots of c0 + c1 z + c2 z^2, numerically stable form.
std::vector<Complex> quadratic_roots(Complex c0, Complex c1, Complex c2) {
  const Complex disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc == Complex{0.0}) {
    const Complex r = -c1 / (2.0 * c2);
    return {r, r};
  }
  const Complex s = std::sqrt(disc);
  const Complex q = (std::real(std::conj(c1) * s) >= 0.0) ? -0.5 * (c1 + s) : -0.5 * (c1 - s);
  if (q == Complex{0.0}) return {Complex{0.0}, Complex{0.0}};
  return {q / c2, c0 / q};
}

std::vector<Complex> aberth(const Polynomial& p, double tol) {
  const int d = p.degree();
  const Polynomial dp = derivative(p);
  const double bound = root_bound(p);
  std::vector<Complex> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / d + 0.4;
    // Slightly perturbed radii keep the starting points off any symmetry axis.
    z[static_cast<std::size_t>(k)] = std::polar(bound * (1.0 + 0.01 * ((k % 3) - 1)), ang);
  }
  constexpr int kMaxIter = 500;
  std::vector<bool> done(z.size(), false);
  for (int it = 0; it < kMaxIter; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const Complex pv = p(z[k]);
      if (pv == Complex{0.0}) {
        done[k] = true;
        continue;
      }
      const Complex ratio = pv / dp(z[k]);
      Complex sum{0.0};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      Complex w = ratio / (1.0 - ratio * sum);
      if (!finite(w)) w = ratio;
      if (!finite(w)) w = Complex{1e-8 * bound, 1e-8 * bound};
      z[k] -= w;
      if (std::abs(w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  double worst = 0.0;
  for (const Complex& r : z) {
    const double rel = std::abs(p(r)) / residual_scale(p, r);
    worst = std::max(worst, rel);
  }
  if (!(worst <= tol)) {
    throw RootError(worst, "root iteration did not converge; best relative residual " + std::to_string(worst));
  }
  return z;
}

}  // namespace

std::vector<Complex> root_list(const Polynomial& p, double tol) {
  if (p.degree() < 1) throw PolynomialError("roots require degree >= 1");
  const auto c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == Complex{0.0}) ++zeros;
  std::vector<Complex> out(zeros, Complex{0.0});
  if (zeros == c.size() - 1) return out;
  const Polynomial q(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
  const auto qc = q.coeffs();
  std::vector<Complex> rest;
  if (q.degree() == 1) {
    rest = {-qc[0] / qc[1]};
  } else if (q.degree() == 2) {
    rest = quadratic_roots(qc[0], qc[1], qc[2]);
  } else {
    rest = aberth(q, tol);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<Root> roots(const Polynomial& p, double tol) {
  std::vector<Complex> list = root_list(p, tol);
  const double radius = 1e-6 * root_bound(p);
  std::vector<Root> out;
  std::vector<bool> used(list.size(), false);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (used[i]) continue;
    // Single-linkage cluster grown from list[i].
    std::vector<std::size_t> members{i};
    used[i] = true;
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        if (!used[j] && std::abs(list[j] - list[members[m]]) <= radius) {
          used[j] = true;
          members.push_back(j);
        }
      }
    }
    Complex mean{0.0};
    for (std::size_t m : members) mean += list[m];
    mean /= static_cast<double>(members.size());
    out.push_back({mean, static_cast<int>(members.size())});
  }
  return out;
}

std::vector<Complex> critical_values_finite(const Polynomial& p) {
  if (p.degree() < 2) throw PolynomialError("critical values require degree >= 2");
  std::vector<Complex> out;
  for (const Root& r : roots(derivative(p))) {
    const Complex v = p(r.value);
    const double tol = 1e-9 * std::max(1.0, std::abs(v));
    if (std::none_of(out.begin(), out.end(), [&](Complex u) { return std::abs(u - v) <= tol; })) {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Complex> preimages(const Polynomial& p, Complex w, double tol) {
  if (p.degree() < 1) throw PolynomialError("preimages require degree >= 1");
  const int d = p.degree();
  if (d >= 3 && p.is_monomial()) {
    // a z^d = w has the d roots (w/a)^{1/d} times the d-th roots of unity.
    const Complex base = w / p.leading();
    const double rad = std::pow(std::abs(base), 1.0 / d);
    const double arg = std::arg(base) / d;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) out.push_back(std::polar(rad, arg + 2.0 * std::numbers::pi * k / d));
    return out;
  }
  if (d == 2) {
    const auto c = p.coeffs();
    return quadratic_roots(c[0] - w, c[1], c[2]);
  }
  if (d == 1) {
    const auto c = p.coeffs();
    return {(w - c[0]) / c[1]};
  }
  return root_list(shift_constant(p, w), tol);
}

double escape_radius(const Polynomial& p) {
  if (p.degree() < 2) throw PolynomialError("escape radius requires degree >= 2");
  const auto c = p.coeffs();
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) s += std::abs(c[k]);
  return std::max(1.0, (2.0 + s) / std::abs(c.back()));
}

std::string to_string(const Polynomial& p) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  const auto c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) os << ", ";
    os << c[k].real();
    if (c[k].imag() != 0.0) os << (c[k].imag() < 0 ? "" : "+") << c[k].imag() << "i";
  }
  os << "]";
  return os.str();
}

}  // namespace psg
