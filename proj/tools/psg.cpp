// psg: command-line front end for the polynomial semigroup toolkit.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "psg/certify.hpp"
#include "psg/examples.hpp"
#include "psg/genfile.hpp"
#include "psg/parallel.hpp"
#include "psg/render.hpp"
#include "psg/report.hpp"

namespace {

using namespace psg;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEscaping = 2;
constexpr int kExitUnknown = 3;

/// Input selection shared by the subcommands that need a generator set.
struct Source {
  std::string file;
  std::string example;
};

struct Loaded {
  GeneratorSet gs;
  std::optional<ExampleSpec> spec;
};

Loaded load(const Source& s) {
  if (!s.example.empty() && !s.file.empty()) throw std::invalid_argument("give either a generator file or --example, not both");
  if (!s.example.empty()) {
    ExampleSpec e = example_by_name(s.example);
    GeneratorSet gs = e.generator_set;
    return {std::move(gs), std::move(e)};
  }
  if (s.file.empty()) throw std::invalid_argument("no generator set: pass a generator file or --example <name>");
  return {read_generator_file(s.file), std::nullopt};
}

std::vector<double> split_numbers(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Complex z = parse_complex(item);
    if (z.imag() != 0.0) throw std::invalid_argument(what + " expects real numbers");
    out.push_back(z.real());
  }
  return out;
}

Viewport make_viewport(const std::string& text, const Loaded& in, int res) {
  if (text.empty()) {
    if (in.spec) return Viewport::square(in.spec->view_center, in.spec->view_half, res);
    return Viewport::square({0.0, 0.0}, 1.05 * in.gs.max_escape_radius(), res);
  }
  const auto v = split_numbers(text, "--viewport");
  if (v.size() != 4 || !(v[2] > 0) || !(v[3] > 0)) throw std::invalid_argument("--viewport expects cx,cy,w,h with w, h > 0");
  const int ph = std::max(16, static_cast<int>(std::lround(res * v[3] / v[2])));
  return Viewport({v[0], v[1]}, v[2], v[3], res, ph);
}

RegionSpec parse_region(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("region must be disk:cx,cy,r or annulus:cx,cy,r_in,r_out");
  const std::string kind = text.substr(0, colon);
  const auto v = split_numbers(text.substr(colon + 1), "region");
  if (kind == "disk" && v.size() == 3) return RegionSpec::disk({v[0], v[1]}, v[2]);
  if (kind == "annulus" && v.size() == 4) return RegionSpec::annulus({v[0], v[1]}, v[2], v[3]);
  throw std::invalid_argument("region must be disk:cx,cy,r or annulus:cx,cy,r_in,r_out");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + out);
}

std::string ends(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  std::string low;
  for (char c : ext) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return low;
}

FiberSequence parse_gamma(const std::string& text, std::size_t m, std::uint64_t seed) {
  if (text.rfind("random:", 0) == 0) return FiberSequence::random(m, std::stoul(text.substr(7)), seed);
  if (text.rfind("periodic:", 0) == 0) {
    const std::string rest = text.substr(9);
    const auto slash = rest.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("--gamma periodic:i,j,.../n");
    std::vector<std::size_t> pat;
    for (double d : split_numbers(rest.substr(0, slash), "--gamma")) pat.push_back(static_cast<std::size_t>(d));
    return FiberSequence::periodic(std::move(pat), std::stoul(rest.substr(slash + 1)));
  }
  std::vector<std::size_t> idx;
  for (double d : split_numbers(text, "--gamma")) idx.push_back(static_cast<std::size_t>(d));
  return FiberSequence::explicit_sequence(std::move(idx));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial semigroup toolkit: postcritical checks, rendering, certificates and topology"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker cap (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

  Source src;
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("generators", src.file, "Generator-set file");
    sub->add_option("--example", src.example, "Shipped example name (see `examples list`)");
  };

  // check
  auto* check = app.add_subcommand("check", "Postcritical boundedness, connectivity tests and the affine set");
  add_source(check);
  int check_depth = kDefaultPcbDepth;
  int m_depth = 12;
  std::string check_out;
  check->add_option("--depth", check_depth, "Postcritical BFS depth")->check(CLI::PositiveNumber);
  check->add_option("--m-depth", m_depth, "Depth of the affine interval set")->check(CLI::Range(1, 30));
  check->add_option("--out", check_out, "Write JSON here instead of stdout");

  // render
  auto* render = app.add_subcommand("render", "Raster or point-cloud approximations");
  add_source(render);
  std::string mode = "julia", viewport, gamma = "random:24", render_out;
  int res = 512, depth = 12, generator = 0;
  std::uint64_t seed = 0;
  std::size_t points = 20000;
  render->add_option("--mode", mode, "julia | khat | fiber | escape | points")
      ->check(CLI::IsMember({"julia", "khat", "fiber", "escape", "points"}));
  render->add_option("--res", res, "Pixels along the horizontal edge")->check(CLI::Range(16, 16384));
  render->add_option("--depth", depth, "Word length (or iterations for escape)")->check(CLI::Range(1, 4096));
  render->add_option("--viewport", viewport, "cx,cy,w,h");
  render->add_option("--seed", seed, "Seed for random fibers and point clouds");
  render->add_option("--gamma", gamma, "Fiber: i,j,k | periodic:i,j/n | random:n");
  render->add_option("--generator", generator, "Generator index for escape mode")->check(CLI::NonNegativeNumber);
  render->add_option("--points", points, "Points for points mode")->check(CLI::PositiveNumber);
  render->add_option("--out", render_out, "Output path (.pgm, .png or .csv)")->required();

  // certify
  auto* certify = app.add_subcommand("certify", "Interval-arithmetic certificates");
  add_source(certify);
  std::string statement = "disconnected", region, cert_out, replay;
  double r_out = 0.0;
  int cert_depth = -1;
  certify->add_option("--statement", statement, "forward | backward | disjoint | disconnected")
      ->check(CLI::IsMember({"forward", "backward", "disjoint", "disconnected"}));
  certify->add_option("--region", region, "disk:cx,cy,r or annulus:cx,cy,r_in,r_out");
  certify->add_option("--rout", r_out, "Outer radius R_out (default 2 * max escape radius)");
  certify->add_option("--depth", cert_depth, "Maximum subdivision depth")->check(CLI::Range(0, 30));
  certify->add_option("--out", cert_out, "Write the certificate here instead of stdout");
  certify->add_option("--replay", replay, "Recompute a stored certificate and compare bytes");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Components, surrounding order and curve diagnostics of an artifact");
  std::vector<std::string> artifacts;
  std::string analyze_out;
  analyze->add_option("artifact", artifacts, "PGM raster or CSV point cloud; several PGMs give a resolution series")->required();
  analyze->add_option("--out", analyze_out, "Write JSON here instead of stdout");

  // examples
  auto* examples = app.add_subcommand("examples", "List or emit shipped examples");
  examples->require_subcommand(1);
  auto* ex_list = examples->add_subcommand("list", "Names and parameters");
  auto* ex_emit = examples->add_subcommand("emit", "Write the generator-set file of an example");
  std::string emit_name, emit_out;
  ex_emit->add_option("name", emit_name, "Example name")->required();
  ex_emit->add_option("--out", emit_out, "Output path (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (threads > 0) set_thread_count(threads);

    if (*check) {
      const Loaded in = load(src);
      const CheckSummary s = run_check(in.gs, check_depth, m_depth);
      emit(check_json(in.gs, s), check_out);
      return s.pcb.verdict == PcbVerdict::Escaping ? kExitEscaping : kExitOk;
    }

    if (*render) {
      const Loaded in = load(src);
      const double R = default_render_radius(in.gs);
      if (mode == "points") {
        if (ends(render_out) != ".csv") throw std::invalid_argument("points mode writes .csv");
        write_csv(backward_sample(in.gs, points, 200, seed), render_out);
        return kExitOk;
      }
      const Viewport vp = make_viewport(viewport, in, res);
      Raster r = [&] {
        if (mode == "khat") return khat_raster(in.gs, vp, depth, R);
        if (mode == "fiber") {
          const FiberSequence g = parse_gamma(gamma, in.gs.size(), seed);
          g.validate(in.gs.size());
          return fiber_raster(in.gs, g, vp, R);
        }
        if (mode == "escape") {
          if (static_cast<std::size_t>(generator) >= in.gs.size()) throw std::invalid_argument("--generator out of range");
          return escape_raster(in.gs[static_cast<std::size_t>(generator)], vp, depth, R);
        }
        return julia_raster(in.gs, vp, depth, R);
      }();
      const std::string ext = ends(render_out);
      if (ext == ".png")
        write_png(r, render_out);
      else if (ext == ".pgm")
        write_pgm(r, render_out);
      else
        throw std::invalid_argument("raster output must end in .pgm or .png");
      return kExitOk;
    }

    if (*certify) {
      if (!replay.empty()) {
        std::ifstream f(replay, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + replay);
        std::ostringstream ss;
        ss << f.rdbuf();
        const std::string stored = ss.str();
        const std::string fresh = replay_certificate(stored);
        if (fresh != stored) {
          std::cerr << "replay mismatch: recomputed certificate differs from " << replay << "\n";
          emit(fresh, cert_out);
          return kExitError;
        }
        emit(fresh, cert_out);
        return certificate_from_json(fresh).certified() ? kExitOk : kExitUnknown;
      }
      const Loaded in = load(src);
      double Rout = r_out > 0.0 ? r_out : (in.spec && in.spec->r_out > 0.0 ? in.spec->r_out : 2.0 * in.gs.max_escape_radius());
      const int d = cert_depth >= 0 ? cert_depth : (in.spec ? in.spec->cert_depth : kDefaultCertDepth);
      Certificate c;
      if (statement == "forward") {
        std::optional<RegionSpec> D;
        GeneratorSet gens = in.gs;
        if (!region.empty()) {
          D = parse_region(region);
        } else if (in.spec && in.spec->forward) {
          D = in.spec->forward->disk;
          std::vector<Generator> sub;
          for (std::size_t i : in.spec->forward->generators) sub.push_back(in.gs[i]);
          gens = GeneratorSet(std::move(sub));
        }
        if (!D) throw std::invalid_argument("forward invariance needs --region disk:cx,cy,r");
        c = cert_forward_invariance(gens, *D, d);
      } else {
        std::optional<RegionSpec> K;
        if (!region.empty()) K = parse_region(region);
        else if (in.spec && in.spec->backward_region) K = in.spec->backward_region;
        else K = suggest_annulus(in.gs);
        if (!K) throw std::invalid_argument("this statement needs --region annulus:cx,cy,r_in,r_out or disk:cx,cy,r");
        // A derived default must still enclose K.
        if (r_out <= 0.0 && Rout <= std::abs(K->center) + K->r_out) Rout = 2.0 * (std::abs(K->center) + K->r_out);
        if (statement == "backward") c = cert_backward_invariance(in.gs, *K, Rout, d);
        else if (statement == "disjoint") {
          if (in.gs.size() != 2) throw std::invalid_argument("disjoint statement needs exactly two generators");
          c = cert_disjoint_preimages(in.gs[0], in.gs[1], *K, Rout, d);
        } else {
          c = cert_disconnected(in.gs, *K, Rout, d);
        }
      }
      emit(certificate_to_json(c), cert_out);
      return c.certified() ? kExitOk : kExitUnknown;
    }

    if (*analyze) {
      for (const std::string& a : artifacts)
        if (!std::filesystem::exists(a)) throw std::runtime_error("missing artifact: " + a);
      if (artifacts.size() > 1) {
        std::vector<Raster> rs;
        for (const std::string& a : artifacts) {
          if (ends(a) == ".csv") throw std::invalid_argument("a series takes PGM rasters only");
          rs.push_back(read_pgm(a));
        }
        emit(analyze_series_json(rs), analyze_out);
      } else if (ends(artifacts[0]) == ".csv") {
        emit(analyze_points_json(read_csv(artifacts[0])), analyze_out);
      } else {
        emit(analyze_raster_json(read_pgm(artifacts[0])), analyze_out);
      }
      return kExitOk;
    }

    if (*ex_list) {
      for (const ExampleSpec& e : shipped_examples())
        std::cout << e.name << (e.parameters.empty() ? "" : "  " + e.parameters) << "  (" << e.generator_set.size()
                  << " generators)\n";
      return kExitOk;
    }
    if (*ex_emit) {
      const ExampleSpec e = example_by_name(emit_name);
      const std::string title = e.name + (e.parameters.empty() ? "" : " " + e.parameters);
      emit(format_generator_set(e.generator_set, title), emit_out);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
