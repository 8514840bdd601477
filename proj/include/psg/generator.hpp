#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psg/polynomial.hpp"

namespace psg {

/// A polynomial map of degree >= 2 stored as a composition chain.
///
/// factors[0] is applied first, so {f1, f2} denotes f2 o f1. Iterates such as
/// g^l are kept as l copies of g instead of one expanded polynomial, which
/// keeps evaluation, preimages and escape bounds accurate at large degree.
class Generator {
 public:
  Generator(Polynomial p, std::string label = {});
  Generator(std::vector<Polynomial> factors, std::string label = {});

  /// g o g o ... o g (times copies).
  static Generator iterate(const Polynomial& g, int times, std::string label = {});

  std::span<const Polynomial> factors() const noexcept { return factors_; }
  int degree() const noexcept { return degree_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// log |a(h)|, accumulated along the chain so huge degrees do not underflow.
  double log_abs_leading() const noexcept { return log_lead_; }
  /// a(h); may underflow to zero for very large degrees.
  Complex leading() const;

  std::optional<Complex> evaluate(Complex z) const noexcept;
  /// Unscreened evaluation for hot loops.
  Complex apply(Complex z) const noexcept {
    for (const Polynomial& f : factors_) z = f(z);
    return z;
  }
  Complex derivative_at(Complex z) const noexcept;

  /// Doubling radius of the chain: the largest factor radius. For |z| >= R every
  /// factor at least doubles the modulus, so |h(z)| >= 2|z|.
  double escape_radius() const;

  /// Finite critical values of the composite, by the chain rule
  /// CV(f_k o ... o f_1) = U_j f_k o ... o f_{j+1}(CV(f_j)).
  std::vector<Complex> critical_values() const;

  /// All degree() solutions of h(z) = w, solved factor by factor.
  std::vector<Complex> preimages(Complex w) const;

  /// Pick one preimage, choosing root index choice[i] % deg(f_i) at factor i
  /// (walking from the last factor to the first).
  Complex preimage_branch(Complex w, std::span<const std::size_t> choice) const;

  bool is_monomial() const noexcept;

  /// The composite as one expanded polynomial.
  Polynomial expanded() const;

  friend bool operator==(const Generator& a, const Generator& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Polynomial> factors_;
  std::string label_;
  int degree_ = 0;
  double log_lead_ = 0.0;
};

/// Indices into a GeneratorSet; (i1, ..., in) denotes h_in o ... o h_i1.
using Word = std::vector<std::size_t>;

/// Ordered, non-empty family of generators, each of degree at least two.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<Generator> gens);
  GeneratorSet(std::initializer_list<Polynomial> polys);

  std::size_t size() const noexcept { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  auto begin() const noexcept { return gens_.begin(); }
  auto end() const noexcept { return gens_.end(); }
  std::span<const Generator> generators() const noexcept { return gens_; }

  double max_escape_radius() const;
  int max_degree() const noexcept;

 private:
  std::vector<Generator> gens_;
};

/// h_{w_n}( ... h_{w_1}(z) ...). std::nullopt means the orbit overflowed.
/// Throws std::out_of_range for an invalid index.
std::optional<Complex> word_apply(const GeneratorSet& gs, const Word& w, Complex z);

/// The composite h_w as a generator chain. Empty words are rejected.
Generator word_map(const GeneratorSet& gs, const Word& w);

}  // namespace psg
