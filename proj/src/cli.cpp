#include "fractile/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fractile/conformance.hpp"
#include "fractile/io.hpp"
#include "fractile/matrix.hpp"
#include "fractile/selfsim.hpp"
#include "fractile/tam.hpp"
#include "fractile/tilegen.hpp"

namespace fractile::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxSize = 1 << 13;

struct CoeffArgs {
  std::uint64_t a = 1, b = 1, c = 1, p = 0;
  CLI::Option* p_opt = nullptr;

  void add_to(CLI::App* app, bool p_required)
  {
    app->add_option("--a", a, "coefficient of the west neighbour")->capture_default_str();
    app->add_option("--b", b, "coefficient of the south-west neighbour")->capture_default_str();
    app->add_option("--c", c, "coefficient of the south neighbour")->capture_default_str();
    p_opt = app->add_option("--p", p, "prime modulus");
    if (p_required)
      p_opt->required();
  }

  bool given() const { return p_opt->count() > 0; }
  Coefficients coeffs() const { return Coefficients(a, b, c, p); }
};

void check_size(std::size_t size)
{
  if (size == 0 || size > kMaxSize)
    throw UsageError("size must be in [1, " + std::to_string(kMaxSize) + "]");
}

// Writes through `fn` to the file, or to `out` when no path was given.
void emit(const std::string& path, std::ostream& out, bool binary, const std::function<void(std::ostream&)>& fn)
{
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, binary ? std::ios::binary : std::ios::out);
  if (!file)
    throw UsageError("cannot open " + path + " for writing");
  fn(file);
  if (!file)
    throw UsageError("error writing " + path);
}

std::ifstream open_input(const std::string& path)
{
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw UsageError("cannot open " + path);
  return file;
}

TileSystem load_tileset(const std::string& path)
{
  auto file = open_input(path);
  return read_tileset(file);
}

int modulus_of(const LabelMatrix& labels)
{
  Symbol top = 1;
  for (Symbol s : labels.entries())
    top = std::max(top, s);
  return top + 1;
}

RenderSpec make_render_spec(const std::string& palette, int cell_size, bool zero_background, int modulus)
{
  RenderSpec spec;
  spec.palette = parse_palette(palette, modulus);
  spec.cell_size = cell_size;
  spec.zero_as_background = zero_background;
  validate_render_spec(spec, modulus);
  return spec;
}

std::string witness_text(const ResidueMatrix& m, const SelfSimWitness& w)
{
  const std::size_t p = m.modulus();
  std::ostringstream os;
  os << "violation k=" << w.k << " s=" << w.s << " t=" << w.t << " i=" << w.i << " j=" << w.j << ": M["
     << w.row(p) << "," << w.col(p) << "] = " << m(w.row(p), w.col(p)) << ", M[" << w.s << "," << w.t << "]*M["
     << w.i << "," << w.j << "] = " << (static_cast<std::uint64_t>(m(w.s, w.t)) * m(w.i, w.j)) % p;
  return os.str();
}

const char* status_name(LemmaStatus s)
{
  switch (s) {
  case LemmaStatus::pass: return "pass";
  case LemmaStatus::fail: return "FAIL";
  case LemmaStatus::not_applicable: return "n/a";
  }
  return "?";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Residue matrices, self-similarity checks and tile self-assembly", "fractile"};
  app.require_subcommand(1);
  std::function<int()> action;

  // matrix
  CoeffArgs mat;
  std::size_t mat_size = 0;
  std::string mat_out;
  auto* matrix_cmd = app.add_subcommand("matrix", "write the residue matrix as a text grid");
  mat.add_to(matrix_cmd, true);
  matrix_cmd->add_option("--size", mat_size, "side of the window")->required();
  matrix_cmd->add_option("--out", mat_out, "output file (default stdout)");
  matrix_cmd->callback([&] {
    action = [&] {
      check_size(mat_size);
      const auto m = delannoy_matrix(mat.coeffs(), mat_size, mat_size);
      emit(mat_out, out, false, [&](std::ostream& os) { write_grid(os, m); });
      return kOk;
    };
  });

  // selfsim
  CoeffArgs ss;
  std::size_t ss_size = 0;
  std::string ss_corrupt;
  auto* selfsim_cmd = app.add_subcommand("selfsim", "check numerical p-self-similarity");
  ss.add_to(selfsim_cmd, true);
  selfsim_cmd->add_option("--size", ss_size, "side of the window")->required();
  selfsim_cmd->add_option("--corrupt", ss_corrupt, "debug: add 1 to cell X,Y before checking");
  selfsim_cmd->callback([&] {
    action = [&] {
      check_size(ss_size);
      const Coefficients coeffs = ss.coeffs();
      auto m = delannoy_matrix(coeffs, ss_size, ss_size);
      if (!ss_corrupt.empty()) {
        std::size_t x = 0, y = 0;
        char comma = 0;
        std::istringstream is(ss_corrupt);
        if (!(is >> x >> comma >> y) || comma != ',' || !is.eof() || x >= ss_size || y >= ss_size)
          throw UsageError("--corrupt expects X,Y inside the window");
        m = m.with_entry(x, y, static_cast<Residue>((m(x, y) + 1) % coeffs.p()));
      }
      const auto report = check_self_similarity(m, static_cast<Residue>(coeffs.p()));
      out << "selfsim a=" << coeffs.a() << " b=" << coeffs.b() << " c=" << coeffs.c() << " p=" << coeffs.p()
          << " size=" << ss_size << "\n";
      out << "checked " << report.checked << " instances, k <= " << report.max_k << "\n";
      if (report.first_violation)
        out << witness_text(m, *report.first_violation) << "\n";
      out << "result " << (report.holds ? "HOLDS" : "VIOLATED") << "\n";
      return report.holds ? kOk : kPropertyFailure;
    };
  });

  // tileset
  CoeffArgs ts;
  bool ts_carpet = false, ts_no_prune = false;
  std::size_t ts_prune = kDefaultPruneHorizon;
  std::uint64_t ts_budget = kDefaultTileBudget;
  std::string ts_out;
  auto* tileset_cmd = app.add_subcommand("tileset", "emit the tile set compiled from a rule");
  ts.add_to(tileset_cmd, false);
  tileset_cmd->add_flag("--carpet", ts_carpet, "emit the hand-written 30-tile carpet set");
  auto* prune_opt = tileset_cmd->add_option("--prune", ts_prune, "side of the pruning horizon")->capture_default_str();
  tileset_cmd->add_flag("--no-prune", ts_no_prune, "keep one tile per window of the domain")->excludes(prune_opt);
  tileset_cmd->add_option("--budget", ts_budget, "maximum domain size")->capture_default_str();
  tileset_cmd->add_option("--out", ts_out, "output file (default stdout)");
  tileset_cmd->callback([&] {
    action = [&] {
      TileSystem system;
      if (ts_carpet) {
        if (ts.given())
          throw UsageError("--carpet takes no rule parameters");
        system = carpet_system();
      } else {
        if (!ts.given())
          throw UsageError("give --p (and --a --b --c) or --carpet");
        if (ts_prune == 0 || ts_prune > kMaxSize)
          throw UsageError("--prune must be in [1, " + std::to_string(kMaxSize) + "]");
        const LocalRule rule = delannoy_rule(ts.coeffs());
        system = build_full_system(rule, ts_budget);
        if (!ts_no_prune)
          system = prune_reachable(system, rule, ts_prune, ts_prune);
      }
      emit(ts_out, out, false, [&](std::ostream& os) { write_tileset(os, system); });
      return kOk;
    };
  });

  // simulate
  std::string sim_tileset, sim_out, sim_image, sim_palette = "spectrum";
  std::size_t sim_size = 0;
  std::uint64_t sim_seed = 0;
  int sim_cell = 1;
  bool sim_lax = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "grow an assembly inside a square bound");
  simulate_cmd->add_option("--tileset", sim_tileset, "tileset file")->required();
  simulate_cmd->add_option("--size", sim_size, "side of the bound")->required();
  simulate_cmd->add_option("--seed", sim_seed, "seed of the attachment order")->capture_default_str();
  simulate_cmd->add_option("--out", sim_out, "assembly dump (default stdout)");
  simulate_cmd->add_option("--image", sim_image, "also render the labels to this P6 file");
  simulate_cmd->add_option("--palette", sim_palette, "palette for --image")->capture_default_str();
  simulate_cmd->add_option("--cell-size", sim_cell, "pixels per cell for --image")->capture_default_str();
  simulate_cmd->add_flag("--lax", sim_lax, "mismatched glues contribute 0 instead of blocking");
  simulate_cmd->callback([&] {
    action = [&] {
      check_size(sim_size);
      const TileSystem system = load_tileset(sim_tileset);
      const Bound bound{static_cast<std::int64_t>(sim_size), static_cast<std::int64_t>(sim_size)};
      const Assembly assembly =
        assemble_bounded(system, bound, sim_seed, sim_lax ? MismatchMode::lax : MismatchMode::strict);
      emit(sim_out, out, false, [&](std::ostream& os) { write_assembly(os, assembly, system, bound); });
      if (!sim_image.empty()) {
        const LabelMatrix labels = assembly_labels(assembly, system, bound);
        const RenderSpec spec = make_render_spec(sim_palette, sim_cell, false, modulus_of(labels));
        emit(sim_image, out, true, [&](std::ostream& os) { write_ppm(os, labels, spec); });
      }
      const std::size_t cells = sim_size * sim_size;
      if (assembly.size() < cells) {
        err << "assembly stalled: " << assembly.size() << " of " << cells << " cells filled\n";
        return kPropertyFailure;
      }
      return kOk;
    };
  });

  // render
  CoeffArgs rd;
  std::size_t rd_size = 0;
  std::string rd_grid, rd_assembly, rd_out, rd_palette = "mono";
  int rd_cell = 1;
  bool rd_zero_bg = false;
  auto* render_cmd = app.add_subcommand("render", "render a matrix, grid file or assembly dump as a P6 pixmap");
  rd.add_to(render_cmd, false);
  auto* rd_size_opt = render_cmd->add_option("--size", rd_size, "side of the matrix window");
  auto* grid_opt = render_cmd->add_option("--grid", rd_grid, "grid file to render");
  auto* asm_opt = render_cmd->add_option("--assembly", rd_assembly, "assembly dump to render");
  grid_opt->excludes(asm_opt)->excludes(rd.p_opt)->excludes(rd_size_opt);
  asm_opt->excludes(rd.p_opt)->excludes(rd_size_opt);
  render_cmd->add_option("--palette", rd_palette, "mono, spectrum or R=RRGGBB,...")->capture_default_str();
  render_cmd->add_option("--cell-size", rd_cell, "pixels per cell")->capture_default_str();
  render_cmd->add_flag("--zero-background", rd_zero_bg, "paint residue 0 white regardless of the palette");
  render_cmd->add_option("--out", rd_out, "output file (default stdout)");
  render_cmd->callback([&] {
    action = [&] {
      std::optional<LabelMatrix> labels;
      int modulus = 0;
      if (!rd_grid.empty()) {
        auto file = open_input(rd_grid);
        const ResidueMatrix m = read_grid(file);
        labels = to_labels(m);
        modulus = static_cast<int>(m.modulus());
      } else if (!rd_assembly.empty()) {
        auto file = open_input(rd_assembly);
        labels = read_assembly_labels(file);
        modulus = modulus_of(*labels);
      } else {
        if (!rd.given() || rd_size_opt->count() == 0)
          throw UsageError("give --p and --size, --grid or --assembly");
        check_size(rd_size);
        const ResidueMatrix m = delannoy_matrix(rd.coeffs(), rd_size, rd_size);
        labels = to_labels(m);
        modulus = static_cast<int>(m.modulus());
      }
      const RenderSpec spec = make_render_spec(rd_palette, rd_cell, rd_zero_bg, modulus);
      emit(rd_out, out, true, [&](std::ostream& os) { write_ppm(os, *labels, spec); });
      return kOk;
    };
  });

  // verify
  CoeffArgs vf;
  bool vf_carpet = false, vf_lax = false, vf_json = false, vf_no_prune = false;
  std::string vf_tileset;
  std::size_t vf_size = 27, vf_trials = 10, vf_prune = 0;
  std::uint64_t vf_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "check that a tile set self-assembles the rule's matrix");
  vf.add_to(verify_cmd, false);
  verify_cmd->add_flag("--carpet", vf_carpet, "the carpet rule; without --tileset, the 30-tile carpet set");
  verify_cmd->add_option("--tileset", vf_tileset, "verify this tileset file instead of the compiled set");
  verify_cmd->add_option("--size", vf_size, "side of the bound")->capture_default_str();
  verify_cmd->add_option("--trials", vf_trials, "number of seeded runs")->capture_default_str();
  verify_cmd->add_option("--seed", vf_seed, "seed of the first run")->capture_default_str();
  auto* vf_prune_opt = verify_cmd->add_option("--prune", vf_prune, "pruning horizon (default max(243, size))");
  verify_cmd->add_flag("--no-prune", vf_no_prune, "use the unpruned compiled set")->excludes(vf_prune_opt);
  verify_cmd->add_flag("--lax", vf_lax, "mismatched glues contribute 0 instead of blocking");
  verify_cmd->add_flag("--json", vf_json, "print the report as JSON");
  verify_cmd->callback([&] {
    action = [&] {
      check_size(vf_size);
      if (vf_trials == 0 || vf_trials > 100000)
        throw UsageError("--trials must be in [1, 100000]");
      if (vf_carpet == vf.given())
        throw UsageError("give exactly one of --carpet or --p");
      const LocalRule rule = vf_carpet ? carpet_rule() : delannoy_rule(vf.coeffs());
      VerifyOptions options;
      options.trials = vf_trials;
      options.first_seed = vf_seed;
      options.mode = vf_lax ? MismatchMode::lax : MismatchMode::strict;
      options.prune = !vf_no_prune;
      options.prune_horizon = vf_prune;
      const Bound bound{static_cast<std::int64_t>(vf_size), static_cast<std::int64_t>(vf_size)};

      ConformanceReport report;
      if (!vf_tileset.empty())
        report = verify_system(load_tileset(vf_tileset), rule, bound, options, vf_tileset);
      else if (vf_carpet)
        report = verify_system(carpet_system(), rule, bound, options, "carpet");
      else
        report = verify_self_assembly(rule, bound, options);
      out << (vf_json ? render_json(report) : render_text(report));
      return report.ok() ? kOk : kPropertyFailure;
    };
  });

  // lemmas
  CoeffArgs lm;
  unsigned lm_kmax = 2;
  auto* lemmas_cmd = app.add_subcommand("lemmas", "brute-force the supporting lemmas");
  lm.add_to(lemmas_cmd, true);
  lemmas_cmd->add_option("--kmax", lm_kmax, "largest block exponent")->capture_default_str();
  lemmas_cmd->callback([&] {
    action = [&] {
      const auto report = check_lemmas(lm.coeffs(), lm_kmax);
      out << "lemmas a=" << lm.a << " b=" << lm.b << " c=" << lm.c << " p=" << lm.p << " side=" << report.side
          << "\n";
      for (const auto& l : report.lemmas) {
        out << l.name << " " << status_name(l.status) << " instances " << l.instances << " skipped " << l.skipped;
        if (l.counterexample)
          out << " counterexample " << *l.counterexample;
        out << "\n";
      }
      out << "result " << (report.all_hold() ? "PASS" : "FAIL") << "\n";
      return report.all_hold() ? kOk : kPropertyFailure;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    return action ? action() : kUsageError;
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsageError;
}

} // namespace fractile::cli
