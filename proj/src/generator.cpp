#include "psg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psg {

namespace {

bool close(Complex a, Complex b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

Generator::Generator(Polynomial p, std::string label) : Generator(std::vector<Polynomial>{std::move(p)}, std::move(label)) {}

Generator::Generator(std::vector<Polynomial> factors, std::string label)
    : factors_(std::move(factors)), label_(std::move(label)) {
  if (factors_.empty()) throw PolynomialError("generator needs at least one factor");
  long long deg = 1;
  double log_lead = 0.0;
  for (const Polynomial& f : factors_) {
    if (f.degree() < 1) throw PolynomialError("generator factors must be non-constant");
    // a(f o g) = a(f) * a(g)^deg(f)
    log_lead = std::log(std::abs(f.leading())) + f.degree() * log_lead;
    deg *= f.degree();
    if (deg > kMaxDegree) throw PolynomialError("generator degree exceeds cap " + std::to_string(kMaxDegree));
  }
  if (deg < 2) throw PolynomialError("generator degree must be at least 2");
  degree_ = static_cast<int>(deg);
  log_lead_ = log_lead;
}

Generator Generator::iterate(const Polynomial& g, int times, std::string label) {
  if (times < 1) throw PolynomialError("iterate count must be >= 1");
  return Generator(std::vector<Polynomial>(static_cast<std::size_t>(times), g), std::move(label));
}

Complex Generator::leading() const {
  Complex a{1.0};
  for (const Polynomial& f : factors_) a = f.leading() * std::pow(a, f.degree());
  return a;
}

std::optional<Complex> Generator::evaluate(Complex z) const noexcept {
  for (const Polynomial& f : factors_) {
    auto v = psg::evaluate(f, z);
    if (!v) return std::nullopt;
    z = *v;
  }
  return z;
}

Complex Generator::derivative_at(Complex z) const noexcept {
  Complex d{1.0};
  for (const Polynomial& f : factors_) {
    const auto c = f.coeffs();
    // Joint Horner for value and derivative.
    Complex v = c.back();
    Complex dv{0.0};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[k];
    }
    d *= dv;
    z = v;
  }
  return d;
}

double Generator::escape_radius() const {
  double r = 1.0;
  for (const Polynomial& f : factors_) {
    if (f.degree() < 2) {
      throw PolynomialError("escape radius of a chain with a linear factor is not implemented");
    }
    r = std::max(r, psg::escape_radius(f));
  }
  return r;
}

std::vector<Complex> Generator::critical_values() const {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (factors_[j].degree() < 2) continue;
    for (Complex v : critical_values_finite(factors_[j])) {
      for (std::size_t k = j + 1; k < factors_.size(); ++k) v = factors_[k](v);
      if (std::none_of(out.begin(), out.end(), [&](Complex u) { return close(u, v); })) out.push_back(v);
    }
  }
  return out;
}

std::vector<Complex> Generator::preimages(Complex w) const {
  std::vector<Complex> level{w};
  for (std::size_t i = factors_.size(); i-- > 0;) {
    std::vector<Complex> next;
    next.reserve(level.size() * static_cast<std::size_t>(factors_[i].degree()));
    for (Complex v : level) {
      auto pre = psg::preimages(factors_[i], v);
      next.insert(next.end(), pre.begin(), pre.end());
    }
    level = std::move(next);
  }
  return level;
}

Complex Generator::preimage_branch(Complex w, std::span<const std::size_t> choice) const {
  std::size_t c = 0;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    auto pre = psg::preimages(factors_[i], w);
    const std::size_t pick = choice.empty() ? 0 : choice[c % choice.size()] % pre.size();
    w = pre[pick];
    ++c;
  }
  return w;
}

bool Generator::is_monomial() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(), [](const Polynomial& f) { return f.is_monomial(); });
}

Polynomial Generator::expanded() const {
  Polynomial acc = factors_.front();
  for (std::size_t i = 1; i < factors_.size(); ++i) acc = compose(factors_[i], acc);
  return acc;
}

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw PolynomialError("generator set must be non-empty");
  std::vector<std::string> labels;
  for (const Generator& g : gens_) {
    if (!g.label().empty()) labels.push_back(g.label());
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw PolynomialError("generator labels must be unique");
  }
}

GeneratorSet::GeneratorSet(std::initializer_list<Polynomial> polys)
    : GeneratorSet([&] {
        std::vector<Generator> g;
        for (const Polynomial& p : polys) g.emplace_back(p);
        return g;
      }()) {}

double GeneratorSet::max_escape_radius() const {
  double r = 1.0;
  for (const Generator& g : gens_) r = std::max(r, g.escape_radius());
  return r;
}

int GeneratorSet::max_degree() const noexcept {
  int d = 0;
  for (const Generator& g : gens_) d = std::max(d, g.degree());
  return d;
}

std::optional<Complex> word_apply(const GeneratorSet& gs, const Word& w, Complex z) {
  for (std::size_t i : w) {
    if (i >= gs.size()) throw std::out_of_range("word index " + std::to_string(i) + " out of range");
  }
  for (std::size_t i : w) {
    auto v = gs[i].evaluate(z);
    if (!v) return std::nullopt;
    z = *v;
  }
  return z;
}

Generator word_map(const GeneratorSet& gs, const Word& w) {
  if (w.empty()) throw std::invalid_argument("empty word has no generator chain");
  std::vector<Polynomial> chain;
  for (std::size_t i : w) {
    if (i >= gs.size()) throw std::out_of_range("word index " + std::to_string(i) + " out of range");
    chain.insert(chain.end(), gs[i].factors().begin(), gs[i].factors().end());
  }
  return Generator(std::move(chain));
}

}  // namespace psg
