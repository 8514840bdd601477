#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "psg/generator.hpp"

namespace psg {

enum class PcbVerdict { Bounded, Escaping, Inconclusive };

std::string to_string(PcbVerdict v);

/// Orbit of the finite critical values under all words up to an explored depth.
struct PostcriticalReport {
  std::vector<Complex> samples;
  double max_modulus = 0.0;
  PcbVerdict verdict = PcbVerdict::Inconclusive;
  /// Witness for Escaping: the word that pushed `seed` past radius_used.
  Word witness;
  Complex seed{0.0};
  int depth = 0;
  double radius_used = 0.0;
  /// Frontier expansions actually performed.
  int levels_explored = 0;
};

struct OrbitOptions {
  /// Grid spacing for closure detection.
  double snap = 1e-9;
  /// Hard cap on distinct orbit points; reaching it yields Inconclusive.
  std::size_t max_samples = 1u << 20;
};

inline constexpr int kDefaultPcbDepth = 400;

/// Breadth-first closure of U_h CV*(h) under all generators.
PostcriticalReport postcritical_orbit(const GeneratorSet& gs, int depth, double radius,
                                      const OrbitOptions& opt = {});

/// postcritical_orbit with radius 2 * max escape radius. Escaping verdicts are
/// rigorous; Bounded only means the snapped orbit closed up within `depth`.
PostcriticalReport pcb_check(const GeneratorSet& gs, int depth = kDefaultPcbDepth);

}  // namespace psg
