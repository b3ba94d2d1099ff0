#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcmap/asymptotics.hpp"
#include "dcmap/geometry.hpp"
#include "dcmap/io.hpp"
#include "dcmap/svg.hpp"

namespace dcmap::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxListed = 50;

struct Globals {
  double rel_tol = ToleranceConfig{}.rel_tol;
  double abs_tol = ToleranceConfig{}.abs_tol;
  int seed_size = 40;

  ToleranceConfig tol() const {
    ToleranceConfig t;
    t.rel_tol = rel_tol;
    t.abs_tol = abs_tol;
    t.validate();
    return t;
  }
};

class Io {
 public:
  Io(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::ostream& err() { return err_; }

  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
    } else {
      write_text_file(path, text);
    }
  }
  void emit(const std::string& path, const json& doc) { emit(path, doc.dump(2) + "\n"); }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

json index_json(LatticeIndex i) { return json::array({i.n, i.m}); }
json label_json(SublatticeLabel z) { return json::array({z.N, z.M}); }

// Non-finite numbers have no JSON form; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

template <typename T, typename F>
json listed(const std::vector<T>& items, F&& convert) {
  json out = json::array();
  for (std::size_t k = 0; k < items.size() && k < kMaxListed; ++k) out.push_back(convert(items[k]));
  return out;
}

ConformalLattice load(const std::string& path) { return lattice_from_json(read_text_file(path)); }

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind = "zc";
  double c = 1.0;
  int size = -1;
  bool naive = false;
  std::string order = "antidiagonal";
  long precision = 0;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, const Globals& g, Io& io) {
  GenerateOptions opts;
  opts.tol = g.tol();
  opts.precision_bits = a.precision;
  opts.order = a.order == "rowmajor" ? FillOrder::RowMajor : FillOrder::AntiDiagonal;
  const int size = a.size >= 0 ? a.size : g.seed_size;
  const MapKind kind = parse_map_kind(a.kind);
  if (a.naive && kind != MapKind::Zc) throw Error(ErrorKind::InvalidArgument, "--naive needs --kind zc");
  const ConformalLattice lat = a.naive ? generate_naive(a.c, size, opts) : generate(kind, a.c, size, opts);
  io.emit(a.output, lattice_to_json(lat));
  return kOk;
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string input;
  std::string which;
  std::string search = "hash";
  std::string output;
};

json overlap_json(const OverlapReport& r) {
  json doc;
  doc["ok"] = r.ok;
  doc["witness"] = r.witness ? json::array({index_json(r.witness->first), index_json(r.witness->second)}) : json();
  doc["self_intersecting"] = listed(r.self_intersecting, index_json);
  doc["degenerate"] = listed(r.degenerate, index_json);
  doc["exempt"] = listed(r.exempt, index_json);
  doc["excluded_infinite"] = listed(r.excluded_infinite, index_json);
  doc["pairs_tested"] = r.pairs_tested;
  return doc;
}

json residuals_json(const ConformalLattice& lat, const ToleranceConfig& tol) {
  json doc;
  const double cross = max_cross_ratio_defect(lat, tol);
  const double constraint = max_constraint_residual(lat);
  doc["threshold"] = tol.rel_tol;
  doc["cross_ratio"] = number(cross);
  doc["constraint"] = number(constraint);
  bool ok = cross < tol.rel_tol && !(constraint >= tol.rel_tol);
  try {
    const RadiusField field = extract_radii(lat, tol);
    RadiusResiduals worst;
    for (const auto& z : residual_labels(field)) {
      const RadiusResiduals r = radius_residuals(field, z);
      worst = {std::max(worst.ln_r, r.ln_r), std::max(worst.square, r.square), std::max(worst.ri, r.ri),
               std::max(worst.le, r.le), std::max(worst.up, r.up)};
    }
    const EdgeRatioField xy = xy_from_radii(field);
    XyResiduals worst_xy;
    for (const auto& z : xy_residual_labels(xy)) {
      const XyResiduals r = xy_residuals(xy, z);
      worst_xy = {std::max(worst_xy.ri_t, r.ri_t), std::max(worst_xy.square_t, r.square_t),
                  std::max(worst_xy.in_r, r.in_r), std::max(worst_xy.out_r, r.out_r)};
    }
    doc["radius"] = {{"lnR", worst.ln_r}, {"square", worst.square}, {"Ri", worst.ri},
                     {"Le", worst.le},   {"Up", worst.up}};
    doc["edge_variables"] = {{"Ri-t", worst_xy.ri_t},
                             {"square-t", worst_xy.square_t},
                             {"inR", worst_xy.in_r},
                             {"outR", worst_xy.out_r}};
    ok = ok && worst.max() < tol.rel_tol && worst_xy.max() < tol.rel_tol;
  } catch (const Error& e) {
    doc["radius_error"] = e.what();
    ok = false;
  }
  doc["ok"] = ok;
  return doc;
}

json sign_json(const ConformalLattice& lat, const ToleranceConfig& tol) {
  const RadiusField field = extract_radii(lat, tol);
  std::vector<SublatticeLabel> bad;
  std::size_t checked = 0;
  for (const auto& z : field.labels()) {
    const SublatticeLabel below = z.shifted(0, -1), right = z.shifted(1, 0);
    if (!field.contains(below) || !field.contains(right)) continue;
    if (!is_proper_radius(field.at(z)) || !is_proper_radius(field.at(below)) ||
        !is_proper_radius(field.at(right))) {
      continue;
    }
    ++checked;
    if (!sign_condition(field, z, tol)) bad.push_back(z);
  }
  return {{"ok", bad.empty()}, {"checked", checked}, {"violations", bad.size()},
          {"labels", listed(bad, label_json)}};
}

int cmd_check(const CheckArgs& a, const Globals& g, Io& io) {
  const ToleranceConfig tol = g.tol();
  const ConformalLattice lat = load(a.input);
  const PairSearch search = a.search == "brute" ? PairSearch::BruteForce : PairSearch::SpatialHash;
  json doc;
  if (a.which == "embedded") {
    doc = overlap_json(is_embedded(lat, tol, search));
  } else if (a.which == "immersed") {
    doc = overlap_json(is_immersed(lat, tol));
  } else if (a.which == "incidence") {
    const IncidenceReport r = incidence_check(circles(lat, tol), tol);
    doc = {{"ok", r.ok()},
           {"neighbor_pairs", r.neighbor_pairs},
           {"half_neighbor_pairs", r.half_neighbor_pairs},
           {"violations", r.violations.size()},
           {"skipped", listed(r.skipped, label_json)}};
    doc["listed"] = listed(r.violations, [](const IncidenceViolation& v) {
      return json{{"a", label_json(v.a)}, {"b", label_json(v.b)}, {"tangency", v.tangency}, {"defect", v.defect}};
    });
  } else if (a.which == "residuals") {
    doc = residuals_json(lat, tol);
  } else {
    doc = sign_json(lat, tol);
  }
  doc["check"] = a.which;
  doc["kind"] = to_string(lat.kind());
  doc["c"] = lat.c();
  doc["size"] = lat.size();
  io.emit(a.output, doc);
  return doc["ok"].get<bool>() ? kOk : kCheckFailed;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
  std::string input;
  std::string analysis;
  int n0 = 0;
  int m0 = 0;
  int limit = -1;  ///< M_max, n_max or n_check; -1 derives it from the input
  double c = 1.5;
  int steps = 200;
  std::string output;
};

int column_reach(const ConformalLattice& lat, int n0) { return lat.size() - std::abs(n0); }

int cmd_fit(const FitArgs& a, const Globals& g, Io& io) {
  const ToleranceConfig tol = g.tol();
  json doc;
  bool pass = false;
  if (a.analysis == "painleve") {
    const PainleveSolution sol = dpii_solve(a.c, a.steps);
    const PainleveAsymptoteReport r = check_painleve_asymptote(sol);
    double residual = 0;
    for (int n = 1; n < sol.steps(); ++n) residual = std::max(residual, dpii_residual(sol, n));
    pass = r.pass && residual < tol.rel_tol;
    doc = {{"c", a.c},
           {"steps", a.steps},
           {"end_deviation", r.end_deviation},
           {"deviation_at_50", r.deviations[50]},
           {"decreasing", r.decreasing},
           {"threshold", kArgumentTolerance},
           {"max_residual", residual},
           {"max_drift", sol.max_drift()}};
  } else {
    if (a.input.empty()) throw Error(ErrorKind::InvalidArgument, "--input is required for " + a.analysis);
    const ConformalLattice lat = load(a.input);
    if (a.analysis == "radius-growth") {
      const int m_max = a.limit >= 0 ? a.limit : column_reach(lat, a.n0);
      const AsymptoticFit fit = fit_radius_growth(extract_radii(lat, tol), a.n0, m_max);
      const double change = std::abs(fit.k_estimate - fit.k_at(m_max / 2)) / fit.k_estimate;
      pass = change < kConvergenceBand;
      json samples = json::array();
      for (const auto& [m, k] : fit.samples) samples.push_back(json::array({m, k}));
      doc = {{"c", fit.c},
             {"n0", fit.n0},
             {"m_max", m_max},
             {"K", fit.k_estimate},
             {"K_extrapolated", fit.k_extrapolated},
             {"relative_change", change},
             {"band", kConvergenceBand},
             {"product_model_defect", number(fit.max_abs_defect)},
             {"samples", samples}};
    } else if (a.analysis == "xy-decay") {
      const int n_max = a.limit >= 0 ? a.limit : column_reach(lat, a.n0) - 1;
      const XyDecayReport r = check_xy_decay(xy_from_radii(extract_radii(lat, tol)), a.n0, n_max);
      pass = r.pass;
      doc = {{"c", r.c},
             {"n0", r.n0},
             {"n_max", n_max},
             {"start_deviation", r.start_deviation},
             {"end_deviation", r.end_deviation},
             {"threshold", r.threshold},
             {"decreasing", r.decreasing},
             {"growth_ratio", number(r.growth_ratio)},
             {"bounded", r.bounded}};
    } else if (a.analysis == "diagonal") {
      const int reach = lat.size() - std::max(a.n0, a.m0);
      const int n_check = a.limit >= 0 ? a.limit : std::min(100, reach);
      const DiagonalReport r = check_diagonal_growth(lat, a.n0, a.m0, n_check);
      pass = r.argument_ok && r.modulus_ok;
      doc = {{"c", r.c},
             {"n0", r.n0},
             {"m0", r.m0},
             {"n_check", n_check},
             {"arg_deviation", r.check_deviation},
             {"decreasing", r.decreasing},
             {"modulus", r.modulus_estimate},
             {"modulus_change", r.modulus_change},
             {"argument_ok", r.argument_ok},
             {"modulus_ok", r.modulus_ok}};
    } else {
      RadiusField field = extract_radii(lat, tol);
      if (field.c() < 1.0) field = dual_radii(field);
      const BoundReport r = check_lemma_bounds(xy_from_radii(field), tol);
      pass = r.ok();
      double worst = HUGE_VAL;
      for (const auto& e : r.entries) worst = std::min({worst, e.x_slack, e.y_slack});
      std::vector<BoundEntry> bad;
      std::copy_if(r.entries.begin(), r.entries.end(), std::back_inserter(bad),
                   [](const BoundEntry& e) { return e.violated; });
      doc = {{"c", r.c},
             {"labels", r.entries.size()},
             {"violations", r.violations},
             {"min_slack", number(worst)},
             {"listed", listed(bad, [](const BoundEntry& e) {
                return json{{"label", label_json(e.z)}, {"x_slack", e.x_slack}, {"y_slack", e.y_slack}};
              })}};
    }
  }
  doc["analysis"] = a.analysis;
  doc["pass"] = pass;
  io.emit(a.output, doc);
  return pass ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ render

struct RenderArgs {
  std::string input;
  std::string output;
  RenderOptions opts;
  bool no_circles = false;
  bool no_quads = false;
};

int cmd_render(RenderArgs a, const Globals& g, Io& io) {
  a.opts.draw_circles = !a.no_circles;
  a.opts.draw_quads = !a.no_quads;
  io.emit(a.output, render_svg(load(a.input), a.opts, g.tol()));
  return kOk;
}

// -------------------------------------------------------------------- dual

struct DualArgs {
  std::string input;
  std::string output;
  std::string radii_output;
  int anchor_n = 1;
  int anchor_m = 0;
  double anchor_re = 0;
  double anchor_im = 0;
};

int cmd_dual(const DualArgs& a, const Globals& g, Io& io) {
  const ToleranceConfig tol = g.tol();
  const ConformalLattice lat = load(a.input);
  const ConformalLattice dual =
      dual_map(lat, {a.anchor_n, a.anchor_m}, ExtendedComplex(complex(a.anchor_re, a.anchor_im)), tol);
  io.emit(a.output, lattice_to_json(dual));
  if (!a.radii_output.empty()) write_text_file(a.radii_output, radii_to_csv(dual_radii(extract_radii(lat, tol))));
  return kOk;
}

// ---------------------------------------------------------------- painleve

struct PainleveArgs {
  double c = 1.5;
  int steps = 200;
  long precision = 0;
  std::string output;
};

int cmd_painleve(const PainleveArgs& a, const Globals&, Io& io) {
  PainleveOptions opts;
  opts.precision_bits = a.precision;
  io.emit(a.output, painleve_to_csv(dpii_solve(a.c, a.steps, opts)));
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Parse:
      return kUsage;
    case ErrorKind::InsufficientData:
      return kInsufficientData;
    default:
      return kCheckFailed;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete conformal maps as cross-ratio lattices and circle patterns", "dcmap"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--rel-tol", g.rel_tol, "Relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--abs-tol", g.abs_tol, "Absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed-size", g.seed_size, "Lattice size used when generate gets no --size")
      ->check(CLI::Range(2, 100000));

  Io io(out, err);
  std::function<int()> action;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build Z^c, Z^2 or Log and write lattice JSON");
  generate->add_option("--kind", gen.kind, "zc, z2 or log")->check(CLI::IsMember({"zc", "z2", "log"}));
  generate->add_option("--c", gen.c, "Exponent of Z^c, 0 < c < 2");
  generate->add_option("--size", gen.size, "Lattice size (defaults to --seed-size)");
  generate->add_flag("--naive", gen.naive, "Equidistant axes without the constraint");
  generate->add_option("--order", gen.order, "Interior fill order")
      ->check(CLI::IsMember({"antidiagonal", "rowmajor"}));
  generate->add_option("--precision", gen.precision, "Working precision in bits (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("-o,--output", gen.output, "Output path (stdout if omitted)");
  generate->callback([&] { action = [&] { return cmd_generate(gen, g, io); }; });

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "Check a lattice JSON file");
  check->add_option("-i,--input", chk.input, "Lattice JSON")->required();
  check->add_option("--which", chk.which, "Check to run")
      ->required()
      ->check(CLI::IsMember({"embedded", "immersed", "incidence", "residuals", "sign"}));
  check->add_option("--search", chk.search, "Pair search for embedded")->check(CLI::IsMember({"hash", "brute"}));
  check->add_option("-o,--output", chk.output, "Report path (stdout if omitted)");
  check->callback([&] { action = [&] { return cmd_check(chk, g, io); }; });

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Asymptotic analyses");
  fit->add_option("-i,--input", fa.input, "Lattice JSON (not used by painleve)");
  fit->add_option("--analysis", fa.analysis, "Analysis to run")
      ->required()
      ->check(CLI::IsMember({"radius-growth", "xy-decay", "diagonal", "painleve", "lemma-bounds"}));
  fit->add_option("--n0", fa.n0, "Column N0 or diagonal offset n0");
  fit->add_option("--m0", fa.m0, "Diagonal offset m0");
  fit->add_option("--limit", fa.limit, "M_max, n_max or n_check (derived from the input if omitted)");
  fit->add_option("--c", fa.c, "Exponent for painleve");
  fit->add_option("--steps", fa.steps, "Steps for painleve")->check(CLI::PositiveNumber);
  fit->add_option("-o,--output", fa.output, "Report path (stdout if omitted)");
  fit->callback([&] { action = [&] { return cmd_fit(fa, g, io); }; });

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Render a lattice as SVG");
  render->add_option("-i,--input", ra.input, "Lattice JSON")->required();
  render->add_option("-o,--output", ra.output, "SVG path (stdout if omitted)");
  render->add_option("--width", ra.opts.width, "Image width in pixels");
  render->add_option("--stroke-width", ra.opts.stroke_width, "Stroke width in pixels");
  render->add_option("--padding", ra.opts.padding, "Viewport padding in pixels");
  render->add_option("--scheme", ra.opts.scheme, "Color scheme")->check(CLI::IsMember({"classic", "mono"}));
  render->add_flag("--no-circles", ra.no_circles, "Omit circles");
  render->add_flag("--no-quads", ra.no_quads, "Omit lattice edges");
  render->callback([&] { action = [&] { return cmd_render(ra, g, io); }; });

  DualArgs da;
  auto* dual = app.add_subcommand("dual", "Dual lattice, optionally with the dual radii");
  dual->add_option("-i,--input", da.input, "Lattice JSON")->required();
  dual->add_option("-o,--output", da.output, "Dual lattice JSON (stdout if omitted)");
  dual->add_option("--radii", da.radii_output, "Write reciprocal radii CSV here");
  dual->add_option("--anchor-n", da.anchor_n, "Anchor index n");
  dual->add_option("--anchor-m", da.anchor_m, "Anchor index m");
  dual->add_option("--anchor-re", da.anchor_re, "Anchor value, real part");
  dual->add_option("--anchor-im", da.anchor_im, "Anchor value, imaginary part");
  dual->callback([&] { action = [&] { return cmd_dual(da, g, io); }; });

  PainleveArgs pa;
  auto* painleve = app.add_subcommand("painleve", "Solve discrete Painleve II, write n,alpha,residual CSV");
  painleve->add_option("--c", pa.c, "Exponent");
  painleve->add_option("--steps", pa.steps, "Number of steps")->check(CLI::PositiveNumber);
  painleve->add_option("--precision", pa.precision, "Working precision in bits (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  painleve->add_option("-o,--output", pa.output, "CSV path (stdout if omitted)");
  painleve->callback([&] { action = [&] { return cmd_painleve(pa, g, io); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "dcmap: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "dcmap: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace dcmap::cli
