#include "psg/genfile.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace psg {

GenfileError::GenfileError(int line, int column, const std::string& what)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Decimal (strtod rounds once, to nearest) or p/q.
bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    double p = 0, q = 0;
    if (!parse_real(s.substr(0, slash), p) || !parse_real(s.substr(slash + 1), q) || q == 0.0) return false;
    out = p / q;
    return std::isfinite(out);
  }
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

bool try_complex(std::string s, Complex& out) {
  s = trim(s);
  // Blanks are allowed only next to a sign, as in "0.25 + 1i".
  std::string t;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != ' ' && s[k] != '\t') {
      t += s[k];
      continue;
    }
    std::size_t n = k;
    while (n < s.size() && (s[n] == ' ' || s[n] == '\t')) ++n;
    const bool near_sign = (!t.empty() && (t.back() == '+' || t.back() == '-')) || (n < s.size() && (s[n] == '+' || s[n] == '-'));
    if (!near_sign) return false;
    k = n - 1;
  }
  if (t.empty()) return false;
  if (t.back() != 'i') {
    double r = 0;
    if (!parse_real(t, r)) return false;
    out = {r, 0.0};
    return true;
  }
  t.pop_back();
  // Split at the last sign that is not the leading one or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E' && t[k - 1] != '/') {
      split = k;
      break;
    }
  const std::string re_s = split == std::string::npos ? "" : t.substr(0, split);
  std::string im_s = split == std::string::npos ? t : t.substr(split);
  if (im_s.empty() || im_s == "+") im_s = "1";
  if (im_s == "-") im_s = "-1";
  if (im_s.front() == '+') im_s.erase(0, 1);
  double re = 0, im = 0;
  if (!re_s.empty() && !parse_real(re_s, re)) return false;
  if (!parse_real(im_s, im)) return false;
  out = {re, im};
  return true;
}

struct Cursor {
  const std::string& line;
  int line_no;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw GenfileError(line_no, static_cast<int>(pos) + 1, what); }
  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos < line.size() && line[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_ws();
    const std::size_t b = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != ';' && line[pos] != '=' &&
           line[pos] != '[' && line[pos] != ']' && line[pos] != ',' && line[pos] != '\r')
      ++pos;
    if (b == pos) fail("expected a token");
    return line.substr(b, pos - b);
  }
  Complex number() {
    const std::size_t b = pos;
    const std::string w = word();
    Complex z;
    if (!try_complex(w, z)) {
      pos = b;
      skip_ws();
      fail("not a number: '" + w + "'");
    }
    return z;
  }
  double real_number() {
    const std::size_t b = pos;
    const Complex z = number();
    if (z.imag() != 0.0) {
      pos = b;
      skip_ws();
      fail("expected a real number");
    }
    return z.real();
  }
  int integer() {
    const std::size_t b = pos;
    const double v = real_number();
    if (v != std::floor(v) || v < 0 || v > 1e6) {
      pos = b;
      skip_ws();
      fail("expected a non-negative integer");
    }
    return static_cast<int>(v);
  }
};

Polynomial logistic_poly(double c, int a, int b) {
  Polynomial p({Complex{c}});
  for (int k = 0; k < a; ++k) p = p * Polynomial::identity();
  for (int k = 0; k < b; ++k) p = p * Polynomial({Complex{1.0}, Complex{-1.0}});
  return p;
}

// Coefficients inside [ ... ] may contain spaces, e.g. "0.25 + 1i".
Polynomial coeff_list(Cursor& cur) {
  cur.expect('=');
  cur.expect('[');
  std::vector<Complex> cs;
  while (true) {
    cur.skip_ws();
    const std::size_t b = cur.pos;
    while (cur.pos < cur.line.size() && cur.line[cur.pos] != ',' && cur.line[cur.pos] != ']') ++cur.pos;
    if (cur.pos >= cur.line.size()) cur.fail("unterminated coefficient list");
    Complex z;
    const std::string item = cur.line.substr(b, cur.pos - b);
    if (!try_complex(item, z)) {
      cur.pos = b;
      cur.fail("not a number: '" + trim(item) + "'");
    }
    cs.push_back(z);
    if (cur.accept(']')) break;
    cur.expect(',');
  }
  try {
    return Polynomial(std::move(cs));
  } catch (const std::exception& e) {
    cur.fail(e.what());
  }
}

std::vector<Polynomial> factor(Cursor& cur) {
  const std::size_t at = cur.pos;
  const std::string kw = cur.word();
  try {
    if (kw == "coeffs") return {coeff_list(cur)};
    if (kw == "monomial") {
      const Complex a = cur.number();
      return {Polynomial::monomial(a, cur.integer())};
    }
    if (kw == "shifted") {
      const Complex a = cur.number();
      const Complex b = cur.number();
      return {Polynomial::shifted(a, b, cur.integer())};
    }
    if (kw == "logistic") {
      const double c = cur.real_number();
      const int a = cur.integer();
      return {logistic_poly(c, a, cur.integer())};
    }
    if (kw == "iterate") {
      const int k = cur.integer();
      if (k < 1) cur.fail("iterate count must be >= 1");
      const std::vector<Polynomial> body = factor(cur);
      std::vector<Polynomial> out;
      for (int i = 0; i < k; ++i) out.insert(out.end(), body.begin(), body.end());
      return out;
    }
  } catch (const GenfileError&) {
    throw;
  } catch (const std::exception& e) {
    cur.pos = at;
    cur.skip_ws();
    cur.fail(e.what());
  }
  cur.pos = at;
  cur.skip_ws();
  cur.fail("unknown factor form '" + kw + "' (coeffs, monomial, shifted, logistic, iterate)");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  std::string im = num(z.imag());
  if (im.front() != '-') im = "+" + im;
  return num(z.real()) + im + "i";
}

std::string factor_text(const Polynomial& p) {
  std::string s = "coeffs = [";
  const auto c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + complex_text(c[k]);
  return s + "]";
}

}  // namespace

Complex parse_complex(const std::string& s) {
  Complex z;
  if (!try_complex(s, z)) throw std::invalid_argument("not a number: '" + s + "'");
  return z;
}

GeneratorSet parse_generator_set(const std::string& text) {
  std::vector<Generator> gens;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    Cursor cur{line, line_no};
    if (cur.at_end()) continue;
    if (cur.word() != "gen") {
      cur.pos = 0;
      cur.skip_ws();
      cur.fail("expected 'gen <label> = <factor> [; <factor> ...]'");
    }
    const std::string label = cur.word();
    cur.expect('=');
    std::vector<Polynomial> fs;
    do {
      auto f = factor(cur);
      fs.insert(fs.end(), f.begin(), f.end());
    } while (cur.accept(';'));
    if (!cur.at_end()) cur.fail("unexpected trailing text");
    try {
      gens.emplace_back(std::move(fs), label);
    } catch (const std::exception& e) {
      throw GenfileError(line_no, 1, e.what());
    }
  }
  if (gens.empty()) throw GenfileError(line_no, 1, "no generators defined");
  return GeneratorSet(std::move(gens));
}

GeneratorSet read_generator_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open generator file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_generator_set(ss.str());
}

std::string format_generator_set(const GeneratorSet& gs, const std::string& title) {
  std::string out;
  if (!title.empty()) out += "# " + title + "\n";
  std::size_t idx = 0;
  for (const Generator& g : gs) {
    ++idx;
    std::string label = g.label();
    for (char& c : label)
      if (c == ' ' || c == '\t' || c == '=' || c == ';' || c == '#') c = '_';
    if (label.empty()) label = "h" + std::to_string(idx);
    const auto fs = g.factors();
    bool repeated = fs.size() > 1;
    for (const Polynomial& f : fs) repeated = repeated && f == fs.front();
    out += "gen " + label + " = ";
    if (repeated) {
      out += "iterate " + std::to_string(fs.size()) + " " + factor_text(fs.front());
    } else {
      for (std::size_t k = 0; k < fs.size(); ++k) out += (k ? " ; " : "") + factor_text(fs[k]);
    }
    out += "\n";
  }
  return out;
}

void write_generator_file(const GeneratorSet& gs, const std::string& path, const std::string& title) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write generator file: " + path);
  f << format_generator_set(gs, title);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace psg
