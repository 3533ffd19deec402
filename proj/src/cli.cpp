#include "gkmloc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkmloc/bb.hpp"
#include "gkmloc/errors.hpp"
#include "gkmloc/localize.hpp"
#include "gkmloc/oracle.hpp"
#include "gkmloc/scene.hpp"

namespace gkmloc::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string scene_path;
  std::string X;
  std::string format = "json";
  std::string cls = "one";
  std::string t = "1";
  std::uint64_t seed = 1;
  bool bv = false;

  // oracle
  double oracle_t = 1.0;
  int grid = 256;
  std::string scheme = "gauss-legendre";
  std::string beta;
  double radius = 0.0;
  long long samples = 1'000'000;
  int bins = 20;
  int threads = 0;
  std::vector<double> t_list;
};

std::string num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

ordered_json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json weights_json(const std::vector<Weight>& ws) {
  ordered_json out = ordered_json::array();
  for (const auto& w : ws) out.push_back(w.coeffs());
  return out;
}

ordered_json m_json(const MultiplicityVector& m) {
  ordered_json out = ordered_json::object();
  for (std::size_t k = 0; k < m.m.size(); ++k) out[m.fixed_points[k]] = m.m[k];
  return out;
}

ordered_json result_json(const LocalizationResult& r) {
  ordered_json j;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["prefactor"] = {{"sign", r.prefactor.sign},
                    {"two_pi_power", r.prefactor.two_pi_power},
                    {"i_power", r.prefactor.i_power}};
  ordered_json terms = ordered_json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"fixed_point", t.fixed_point},
                     {"m", t.m},
                     {"numerator", complex_json(t.numerator)},
                     {"den", complex_json(t.den)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

void result_csv(const LocalizationResult& r, std::ostream& out) {
  out << "fixed_point,m,numerator_re,numerator_im,den_re,den_im\n";
  for (const auto& t : r.terms) {
    out << t.fixed_point << ',' << t.m << ',' << num(t.numerator.real()) << ',' << num(t.numerator.imag()) << ','
        << num(t.den.real()) << ',' << num(t.den.imag()) << '\n';
  }
}

CartanElement resolve_X(const Scene& scene, const Options& o) {
  if (!o.X.empty()) {
    CartanElement X = parse_cartan(o.X);
    if (static_cast<int>(X.rank()) != scene.model.rank()) {
      throw DimensionError("--X has " + std::to_string(X.rank()) + " coordinates, model rank is " +
                           std::to_string(scene.model.rank()));
    }
    return X;
  }
  if (scene.X) return *scene.X;
  throw InvalidInputError("no X: pass --X or set \"X\" in the scene");
}

FixedPointClass resolve_class(const GKMModel& model, const Options& o) {
  if (o.cls == "one") return unit_class(model);
  if (o.cls == "euler") return euler_form_class(model);
  if (o.cls == "exp-hamiltonian") return exp_hamiltonian_class(model, parse_rational(o.t));
  throw InvalidInputError("unknown class '" + o.cls + "' (one, euler, exp-hamiltonian)");
}

void emit(const ordered_json& j, std::ostream& out) { out << j.dump() << '\n'; }

void cmd_fixed_points(const Scene& scene, const Options& o, std::ostream& out) {
  const GKMModel& model = scene.model;
  if (o.format == "csv") {
    out << "name,tangent_weights,hamiltonian\n";
    for (const auto& p : model.fixed_points()) {
      std::string ws;
      for (const auto& w : p.tangent_weights) ws += (ws.empty() ? "" : " ") + to_string(w);
      std::string h;
      for (const auto& q : p.hamiltonian) h += (h.empty() ? "" : " ") + to_string(q);
      out << p.name << ",\"" << ws << "\",\"" << h << "\"\n";
    }
    return;
  }
  ordered_json j = model_to_json(model);
  j["delta"] = weights_json(model.delta());
  emit(j, out);
}

void cmd_chambers(const Scene& scene, const Options& o, std::ostream& out) {
  const auto reps = chamber_representatives(scene.model.delta(), scene.model.rank(), scene.slice, o.seed);
  const auto walls = hyperplanes(scene.model.delta());
  if (o.format == "csv") {
    out << "chamber,sample\n";
    for (const auto& X : reps) {
      out << chamber_key(scene.model.delta(), X, scene.slice) << ",\"" << to_string(X) << "\"\n";
    }
    return;
  }
  ordered_json j;
  j["slice"] = to_string(scene.slice);
  j["seed"] = o.seed;
  j["walls"] = weights_json(walls);
  ordered_json rows = ordered_json::array();
  for (const auto& X : reps) {
    rows.push_back({{"chamber", chamber_key(scene.model.delta(), X, scene.slice)}, {"sample", cartan_to_json(X)}});
  }
  j["chambers"] = std::move(rows);
  emit(j, out);
}

void cmd_bb(const Scene& scene, const Options& o, std::ostream& out) {
  const BBDecomposition d = bb_decompose(scene.model, resolve_X(scene, o), scene.slice);
  if (o.format == "csv") {
    out << "fixed_point,dim_minus,negative_weights\n";
    for (const auto& c : d.cells) {
      std::string ws;
      for (const auto& w : c.negative_weights) ws += (ws.empty() ? "" : " ") + to_string(w);
      out << c.fixed_point << ',' << c.dim_minus << ",\"" << ws << "\"\n";
    }
    return;
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : d.cells) {
    cells.push_back(
        {{"fixed_point", c.fixed_point}, {"dim_minus", c.dim_minus}, {"negative_weights", weights_json(c.negative_weights)}});
  }
  emit({{"chamber", d.chamber}, {"cells", std::move(cells)}}, out);
}

void cmd_multiplicities(const Scene& scene, const Options& o, std::ostream& out) {
  const MultiplicityVector m = multiplicities(scene.model, scene.sheaf, resolve_X(scene, o), scene.slice);
  if (o.format == "csv") {
    out << "chamber,fixed_point,m\n";
    for (std::size_t k = 0; k < m.m.size(); ++k) out << m.chamber << ',' << m.fixed_points[k] << ',' << m.m[k] << '\n';
    return;
  }
  emit({{"chamber", m.chamber}, {"m", m_json(m)}}, out);
}

void emit_result(const LocalizationResult& r, const Options& o, std::ostream& out) {
  if (o.format == "csv") {
    result_csv(r, out);
  } else {
    emit(result_json(r), out);
  }
}

void cmd_localize(const Scene& scene, const Options& o, std::ostream& out) {
  const CartanElement X = resolve_X(scene, o);
  const FixedPointClass cls = resolve_class(scene.model, o);
  LocalizationResult r = o.bv ? bv_localize(scene.model, cls, X) : main_localize(scene.model, scene.sheaf, cls, X, scene.slice);
  emit_result(r, o, out);
}

int cmd_gauss_bonnet(const Scene& scene, const Options& o, std::ostream& out) {
  const GaussBonnetResult gb =
      gauss_bonnet(scene.model, scene.sheaf, resolve_X(scene, o), scene.slice, scene.gauss_bonnet_tolerance);
  emit({{"localized", gb.localized.real()}, {"combinatorial", gb.combinatorial}, {"match", gb.match}}, out);
  return gb.match ? 0 : 1;
}

void cmd_dh(const Scene& scene, const Options& o, std::ostream& out) {
  emit_result(dh_fourier(scene.model, scene.sheaf, resolve_X(scene, o), scene.slice), o, out);
}

int cmd_chamber_scan(const Scene& scene, const Options& o, std::ostream& out, std::ostream& err) {
  const auto rows = chamber_scan(scene.model, scene.sheaf, resolve_class(scene.model, o), scene.slice, o.seed);
  bool constant_total = std::all_of(rows.begin(), rows.end(), [&](const ChamberRow& r) { return r.total == rows.front().total; });
  if (o.format == "csv") {
    out << "chamber,sample";
    if (!rows.empty()) {
      for (const auto& name : rows.front().m.fixed_points) out << ",m_" << name;
    }
    out << ",total,value_re,value_im\n";
    for (const auto& r : rows) {
      out << r.chamber << ",\"" << to_string(r.sample) << '"';
      for (auto v : r.m.m) out << ',' << v;
      out << ',' << r.total << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << '\n';
    }
  } else {
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
      list.push_back({{"chamber", r.chamber},
                      {"sample", cartan_to_json(r.sample)},
                      {"m", m_json(r.m)},
                      {"total", r.total},
                      {"value_re", r.value.real()},
                      {"value_im", r.value.imag()}});
    }
    emit({{"class", o.cls}, {"seed", o.seed}, {"rows", std::move(list)}}, out);
  }
  if (!constant_total) {
    err << "error: sum of multiplicities differs between chambers\n";
    return 1;
  }
  return 0;
}

void cmd_report(const Scene& scene, const Options& o, std::ostream& out) {
  const auto reps = chamber_representatives(scene.model.delta(), scene.model.rank(), scene.slice, o.seed);
  std::vector<MultiplicityVector> ms;
  for (const auto& X : reps) ms.push_back(multiplicities(scene.model, scene.sheaf, X, scene.slice));
  if (o.format == "csv") {
    out << "chamber";
    for (const auto& p : scene.model.fixed_points()) out << ',' << p.name;
    out << ",total\n";
    for (const auto& m : ms) {
      out << m.chamber;
      for (auto v : m.m) out << ',' << v;
      out << ',' << m.total() << '\n';
    }
    return;
  }
  ordered_json j;
  j["sheaf"] = sheaf_to_json(scene.sheaf);
  j["euler_characteristic"] = euler_characteristic(scene.sheaf);
  ordered_json rows = ordered_json::array();
  for (const auto& m : ms) rows.push_back({{"chamber", m.chamber}, {"m", m_json(m)}, {"total", m.total()}});
  j["chambers"] = std::move(rows);
  emit(j, out);
}

int cmd_validate(const Scene& scene, const Options& o, std::ostream& out, std::ostream& err) {
  ordered_json checks = ordered_json::array();
  auto fail = [&](const std::string& what) {
    err << "error: " << what << '\n';
    emit({{"valid", false}, {"error", what}, {"checks", checks}}, out);
    return 1;
  };
  try {
    validate_sheaf(scene.model, scene.sheaf);
  } catch (const InconsistentSheafError& e) {
    return fail(e.what());
  }
  checks.push_back({{"check", "tables"}, {"ok", true}});

  const long long chi = euler_characteristic(scene.sheaf);
  for (const auto& X : chamber_representatives(scene.model.delta(), scene.model.rank(), scene.slice, o.seed)) {
    const std::string key = chamber_key(scene.model.delta(), X, scene.slice);
    MultiplicityVector m;
    try {
      m = multiplicities(scene.model, scene.sheaf, X, scene.slice);
    } catch (const UnsupportedSheafError& e) {
      checks.push_back({{"check", "multiplicities"}, {"chamber", key}, {"ok", nullptr}, {"note", e.what()}});
      continue;
    } catch (const InconsistentSheafError& e) {
      return fail(e.what());
    }
    if (m.total() != chi) {
      return fail("chamber " + key + ": sum of multiplicities " + std::to_string(m.total()) +
                  " != chi(M, F) = " + std::to_string(chi));
    }
    checks.push_back({{"check", "sum m = chi"}, {"chamber", key}, {"ok", true}});

    try {
      const MultiplicityVector local = multiplicities_local(scene.model, scene.sheaf, X, scene.slice);
      if (local.m != m.m) return fail("chamber " + key + ": costalk multiplicities differ from cell-table multiplicities");
      checks.push_back({{"check", "local = global"}, {"chamber", key}, {"ok", true}});
    } catch (const UnsupportedSheafError&) {
    }

    const GaussBonnetResult gb = gauss_bonnet(scene.model, scene.sheaf, X, scene.slice, scene.gauss_bonnet_tolerance);
    if (!gb.match) {
      return fail("chamber " + key + ": Gauss-Bonnet mismatch, localized " + num(gb.localized.real()) +
                  " vs chi " + std::to_string(gb.combinatorial));
    }
    checks.push_back({{"check", "gauss-bonnet"}, {"chamber", key}, {"ok", true}});
  }
  emit({{"valid", true}, {"checks", std::move(checks)}}, out);
  return 0;
}

void cmd_export(const Scene& scene, std::ostream& out) { out << scene_to_json(scene).dump(2) << '\n'; }

void cmd_oracle_quadrature(const Options& o, std::ostream& out) {
  oracle::QuadratureSpec spec;
  spec.n_theta = spec.n_phi = o.grid;
  if (o.scheme == "midpoint") {
    spec.scheme = oracle::QuadratureScheme::midpoint;
  } else if (o.scheme != "gauss-legendre") {
    throw InvalidInputError("unknown scheme '" + o.scheme + "' (gauss-legendre, midpoint)");
  }
  emit({{"t", o.oracle_t}, {"grid", o.grid}, {"scheme", o.scheme}, {"value", oracle::quadrature_cp1(o.oracle_t, spec)}},
       out);
}

void cmd_oracle_gaussian(const Options& o, std::ostream& out) {
  auto comma = o.beta.find(',');
  if (comma == std::string::npos) throw InvalidInputError("--beta expects <re>,<im>");
  std::complex<double> beta;
  try {
    beta = {std::stod(o.beta.substr(0, comma)), std::stod(o.beta.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidInputError("--beta expects two numbers, got '" + o.beta + "'");
  }
  const double radius = o.radius > 0 ? o.radius : oracle::min_truncation_radius(beta);
  const std::complex<double> value = oracle::gaussian_fiber_integral(beta, radius, o.grid);
  const std::complex<double> closed = std::complex<double>(0, -2.0 * std::numbers::pi) / beta;
  emit({{"beta", complex_json(beta)},
        {"radius", radius},
        {"grid", o.grid},
        {"value", complex_json(value)},
        {"closed_form", complex_json(closed)},
        {"abs_error", std::abs(value - closed)}},
       out);
}

void cmd_oracle_pushforward(const Options& o, std::ostream& out) {
  const oracle::PushforwardReport r = oracle::dh_pushforward_cp1(o.samples, o.seed, o.bins, o.threads);
  if (o.format == "csv") {
    out << "bin_lo,bin_hi,mass\n";
    for (const auto& b : r.bins) out << num(b.lo) << ',' << num(b.hi) << ',' << num(b.mass) << '\n';
    return;
  }
  ordered_json bins = ordered_json::array();
  for (const auto& b : r.bins) bins.push_back({{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"mass", b.mass}});
  emit({{"seed", r.seed},
        {"samples", r.samples},
        {"ks_distance", r.ks_distance},
        {"mean", r.mean},
        {"total_mass", r.total_mass},
        {"bins", std::move(bins)}},
       out);
}

void cmd_oracle_invert(const Options& o, std::ostream& out) {
  const oracle::InversionReport r = oracle::dh_inversion_check(o.t_list);
  if (o.format == "csv") {
    out << "t,transform,quadrature,rel_error\n";
    for (const auto& row : r.rows) {
      out << num(row.t) << ',' << num(row.transform) << ',' << num(row.quadrature) << ',' << num(row.rel_error) << '\n';
    }
    return;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back(
        {{"t", row.t}, {"transform", row.transform}, {"quadrature", row.quadrature}, {"rel_error", row.rel_error}});
  }
  emit({{"rows", std::move(rows)}, {"max_rel_error", r.max_rel_error}}, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point localization on torus manifolds with constructible sheaf coefficients", "gkmloc"};
  app.require_subcommand(1);
  Options o;

  auto add_scene = [&](CLI::App* sub) {
    sub->add_option("scene", o.scene_path, "Scene JSON file")->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_X = [&](CLI::App* sub) {
    sub->add_option("--X", o.X, "Evaluation point, e.g. \"1,-2\" or \"i1\"; overrides the scene");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Seed for chamber sampling"); };
  auto add_class = [&](CLI::App* sub) {
    sub->add_option("--class", o.cls, "one | euler | exp-hamiltonian")->check(CLI::IsMember({"one", "euler", "exp-hamiltonian"}));
    sub->add_option("--t", o.t, "Parameter t of exp(t(J + omega)), rational");
  };

  auto* fixed_points = app.add_subcommand("fixed-points", "List fixed points, tangent weights and moment values");
  add_scene(fixed_points);
  auto* chambers = app.add_subcommand("chambers", "Enumerate chambers of the weight arrangement");
  add_scene(chambers);
  add_seed(chambers);
  auto* bb = app.add_subcommand("bb", "Bialynicki-Birula cells in the chamber of X");
  add_scene(bb);
  add_X(bb);
  auto* mult = app.add_subcommand("multiplicities", "Multiplicity vector of the sheaf at X");
  add_scene(mult);
  add_X(mult);
  auto* localize = app.add_subcommand("localize", "Localized integral of a class");
  add_scene(localize);
  add_X(localize);
  add_class(localize);
  localize->add_flag("--bv", o.bv, "Plain fixed-point sum (all multiplicities 1)");
  auto* gb = app.add_subcommand("gauss-bonnet", "Localized Euler form against chi(M, F)");
  add_scene(gb);
  add_X(gb);
  auto* dh = app.add_subcommand("dh", "Fourier transform of the Duistermaat-Heckman measure at X");
  add_scene(dh);
  add_X(dh);
  auto* scan = app.add_subcommand("chamber-scan", "Multiplicities and localized value in every chamber");
  add_scene(scan);
  add_class(scan);
  add_seed(scan);
  auto* report = app.add_subcommand("report", "Strata, chi and per-chamber multiplicity vectors");
  add_scene(report);
  add_seed(report);
  auto* validate = app.add_subcommand("validate", "Run all sheaf-table consistency checks");
  add_scene(validate);
  add_seed(validate);
  auto* exporter = app.add_subcommand("export", "Print the scene in explicit form");
  add_scene(exporter);

  auto* oracle_cmd = app.add_subcommand("oracle", "Independent numerical checks");
  oracle_cmd->require_subcommand(1);
  auto* quad = oracle_cmd->add_subcommand("cp1-quadrature", "Direct quadrature of e^{tH} over S^2");
  quad->add_option("--t", o.oracle_t, "t")->required();
  quad->add_option("--grid", o.grid, "Nodes per direction");
  quad->add_option("--scheme", o.scheme, "gauss-legendre | midpoint");
  auto* gaussian = oracle_cmd->add_subcommand("gaussian", "Gaussian fiber integral against -2 pi i / beta");
  gaussian->add_option("--beta", o.beta, "<re>,<im>")->required();
  gaussian->add_option("--radius", o.radius, "Truncation radius (default 6/sqrt|beta|)");
  gaussian->add_option("--grid", o.grid, "Grid points per direction")->default_val(400);
  auto* push = oracle_cmd->add_subcommand("dh-pushforward", "Monte-Carlo Duistermaat-Heckman measure on CP^1");
  push->add_option("--samples", o.samples, "Number of samples (>= 10000)");
  push->add_option("--seed", o.seed, "Seed");
  push->add_option("--bins", o.bins, "Histogram bins");
  push->add_option("--threads", o.threads, "Worker threads (default GKMLOC_THREADS or 1)");
  push->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  auto* invert = oracle_cmd->add_subcommand("dh-invert", "Localized DH transform against 1-D quadrature");
  invert->add_option("--t", o.t_list, "Comma-separated t values")->delimiter(',')->required();
  invert->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (oracle_cmd->parsed()) {
      if (quad->parsed()) cmd_oracle_quadrature(o, out);
      if (gaussian->parsed()) cmd_oracle_gaussian(o, out);
      if (push->parsed()) cmd_oracle_pushforward(o, out);
      if (invert->parsed()) cmd_oracle_invert(o, out);
      return 0;
    }
    const Scene scene = load_scene(o.scene_path);
    if (fixed_points->parsed()) cmd_fixed_points(scene, o, out);
    if (chambers->parsed()) cmd_chambers(scene, o, out);
    if (bb->parsed()) cmd_bb(scene, o, out);
    if (mult->parsed()) cmd_multiplicities(scene, o, out);
    if (localize->parsed()) cmd_localize(scene, o, out);
    if (gb->parsed()) return cmd_gauss_bonnet(scene, o, out);
    if (dh->parsed()) cmd_dh(scene, o, out);
    if (scan->parsed()) return cmd_chamber_scan(scene, o, out, err);
    if (report->parsed()) cmd_report(scene, o, out);
    if (validate->parsed()) return cmd_validate(scene, o, out, err);
    if (exporter->parsed()) cmd_export(scene, out);
    return 0;
  } catch (const InconsistentSheafError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace gkmloc::cli
