#include "psg/postcritical.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace psg {

std::string to_string(PcbVerdict v) {
  switch (v) {
    case PcbVerdict::Bounded: return "Bounded";
    case PcbVerdict::Escaping: return "Escaping";
    case PcbVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

using GridKey = std::pair<long long, long long>;

struct Node {
  Complex z;
  std::size_t parent;  // index into nodes, npos for seeds
  std::size_t gen;
  Complex seed;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Word word_of(const std::vector<Node>& nodes, std::size_t i) {
  Word w;
  while (nodes[i].parent != npos) {
    w.push_back(nodes[i].gen);
    i = nodes[i].parent;
  }
  return {w.rbegin(), w.rend()};
}

}  // namespace

PostcriticalReport postcritical_orbit(const GeneratorSet& gs, int depth, double radius, const OrbitOptions& opt) {
  if (depth < 1) throw std::invalid_argument("postcritical_orbit: depth must be >= 1");
  PostcriticalReport rep;
  rep.depth = depth;
  rep.radius_used = radius;

  // std::map keeps the snapping grid ordered, so the frontier order (and hence
  // every reported witness) is independent of hashing.
  std::map<GridKey, std::size_t> seen;
  std::vector<Node> nodes;
  auto key = [&](Complex z) {
    return GridKey{std::llround(z.real() / opt.snap), std::llround(z.imag() / opt.snap)};
  };

  auto escape = [&](Word w, Complex seed) {
    rep.verdict = PcbVerdict::Escaping;
    rep.witness = std::move(w);
    rep.seed = seed;
  };

  std::vector<std::size_t> frontier;
  for (const Generator& g : gs) {
    for (Complex v : g.critical_values()) {
      rep.max_modulus = std::max(rep.max_modulus, std::abs(v));
      if (!(std::abs(v) <= radius)) {
        escape({}, v);
        return rep;
      }
      auto [it, inserted] = seen.emplace(key(v), nodes.size());
      if (!inserted) continue;
      nodes.push_back({v, npos, 0, v});
      frontier.push_back(nodes.size() - 1);
    }
  }

  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    rep.levels_explored = level + 1;
    std::vector<std::size_t> next;
    for (std::size_t fi : frontier) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        const Complex z = nodes[fi].z;
        const auto v = gs[j].evaluate(z);
        const double mod = v ? std::abs(*v) : INFINITY;
        rep.max_modulus = std::max(rep.max_modulus, mod);
        if (!(mod <= radius)) {
          Word w = word_of(nodes, fi);
          w.push_back(j);
          escape(std::move(w), nodes[fi].seed);
          return rep;
        }
        auto [it, inserted] = seen.emplace(key(*v), nodes.size());
        if (!inserted) continue;
        nodes.push_back({*v, fi, j, nodes[fi].seed});
        next.push_back(nodes.size() - 1);
        if (nodes.size() >= opt.max_samples) {
          rep.verdict = PcbVerdict::Inconclusive;
          for (const auto& [k, idx] : seen) rep.samples.push_back(nodes[idx].z);
          return rep;
        }
      }
    }
    frontier = std::move(next);
  }

  rep.verdict = frontier.empty() ? PcbVerdict::Bounded : PcbVerdict::Inconclusive;
  rep.samples.reserve(seen.size());
  for (const auto& [k, idx] : seen) rep.samples.push_back(nodes[idx].z);
  return rep;
}

PostcriticalReport pcb_check(const GeneratorSet& gs, int depth) {
  return postcritical_orbit(gs, depth, 2.0 * gs.max_escape_radius());
}

}  // namespace psg
