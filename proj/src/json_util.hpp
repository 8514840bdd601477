#pragma once

#include <json.hpp>

#include "psg/generator.hpp"

namespace psg::detail {

using ojson = nlohmann::ordered_json;

inline ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

inline Complex complex_from(const ojson& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline ojson polynomial_json(const Polynomial& p) {
  ojson a = ojson::array();
  for (Complex c : p.coeffs()) a.push_back(complex_json(c));
  return a;
}

inline Polynomial polynomial_from(const ojson& j) {
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(complex_from(e));
  return Polynomial(std::move(c));
}

inline ojson generator_json(const Generator& g) {
  ojson j;
  j["label"] = g.label();
  j["degree"] = g.degree();
  ojson fs = ojson::array();
  for (const Polynomial& f : g.factors()) fs.push_back(polynomial_json(f));
  j["factors"] = std::move(fs);
  return j;
}

inline Generator generator_from(const ojson& j) {
  std::vector<Polynomial> fs;
  for (const auto& f : j.at("factors")) fs.push_back(polynomial_from(f));
  return Generator(std::move(fs), j.value("label", std::string{}));
}

inline ojson generator_set_json(const GeneratorSet& gs) {
  ojson a = ojson::array();
  for (const Generator& g : gs) a.push_back(generator_json(g));
  return a;
}

inline GeneratorSet generator_set_from(const ojson& j) {
  std::vector<Generator> gens;
  for (const auto& g : j) gens.push_back(generator_from(g));
  return GeneratorSet(std::move(gens));
}

}  // namespace psg::detail
