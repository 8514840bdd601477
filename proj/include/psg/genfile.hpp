#pragma once

#include <stdexcept>
#include <string>

#include "psg/generator.hpp"

namespace psg {

/// Generator-set text format, one generator per line:
///
///   # comment
///   gen g1 = coeffs = [-1, 0, 1]
///   gen g2 = monomial 0.25 2
///   gen h  = shifted 0.5 0.25 2          (0.5 (z - 0.25)^2 + 0.25)
///   gen k  = logistic 4 1 1              (4 z (1 - z))
///   gen q  = iterate 2 coeffs = [-1, 0, 1]
///   gen c  = monomial 1 2 ; shifted 1 0.25 2
///
/// Factors separated by ';' are applied left to right. Numbers are decimal
/// (rounded once to binary64), p/q rationals, or complex a+bi forms.
class GenfileError : public std::invalid_argument {
 public:
  GenfileError(int line, int column, const std::string& what);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

GeneratorSet parse_generator_set(const std::string& text);
GeneratorSet read_generator_file(const std::string& path);

/// Canonical text; parse_generator_set(format_generator_set(gs)) == gs.
std::string format_generator_set(const GeneratorSet& gs, const std::string& title = {});
void write_generator_file(const GeneratorSet& gs, const std::string& path, const std::string& title = {});

/// Parses one real or complex literal ("1.5", "-1/3", "0.25-2i", "i").
Complex parse_complex(const std::string& s);

}  // namespace psg
