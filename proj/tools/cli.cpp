#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hfock/berezin.hpp"
#include "hfock/criteria.hpp"
#include "hfock/format.hpp"
#include "hfock/measure_io.hpp"
#include "hfock/operator.hpp"

namespace hfock::cli {

namespace {

const std::vector<int> kOperatorTrunc{10};
const std::vector<int> kReportTrunc{10, 20, 40};
constexpr double kDefaultFieldWindow = 3.0;
constexpr int kDefaultLatticeExtent = 3;

template <class T>
void layer(T& target, const std::optional<T>& a, const std::optional<T>& b) {
  if (a) {
    target = *a;
  } else if (b) {
    target = *b;
  }
}

template <class T>
std::optional<T> pick(const std::optional<T>& a, const std::optional<T>& b) {
  return a ? a : b;
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

// Probe grid for berezin/field: [-W, W]^2 at step 0.25/sqrt(alpha), odd
// point count so the origin is a node.
GridSpec field_grid(const RunConfig& cfg) {
  const double w = cfg.window > 0.0 ? cfg.window : kDefaultFieldWindow;
  const double h = 0.25 / std::sqrt(cfg.alpha);
  const int half = std::max(1, static_cast<int>(std::lround(w / h)));
  return GridSpec::spanning(-w, w, 2 * half + 1);
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Satisfied:
      return kSuccess;
    case Verdict::Violated:
      return kViolated;
    case Verdict::Inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

int cmd_berezin(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  const Measure mu = load_measure(file);
  const QuadratureSpec quad = cfg.quadrature(mu.extent());
  const BerezinTransform b(cfg.fock(), mu, quad);
  const ScalarField field = sample_field(b, field_grid(cfg), "Berezin transform of " + mu.description());
  auto f = open_output(cfg.out, "berezin.csv");
  write_field_csv(f, field);
  out << "wrote " << (cfg.out / "berezin.csv").string() << '\n';
  return kSuccess;
}

int cmd_field(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  const Measure mu = load_measure(file);
  const double r = cfg.r;
  const ScalarField field =
      sample_field([&](Complex z) { return avg_function(mu, z, r); }, field_grid(cfg), "averaging function");
  auto f = open_output(cfg.out, "field.csv");
  write_field_csv(f, field);
  out << "wrote " << (cfg.out / "field.csv").string() << '\n';
  return kSuccess;
}

int cmd_operator(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  const Measure mu = load_measure(file);
  const QuadratureSpec quad = cfg.quadrature(mu.extent());
  const int cut = (cfg.trunc.empty() ? kOperatorTrunc : cfg.trunc).back();
  const TruncatedOperator op = assemble(cfg.fock(), mu, cut, quad);
  const SpectralData spec = spectrum(op);
  const TraceIdentity t = trace_identity_check(cfg.fock(), mu, cut, quad);
  {
    auto f = open_output(cfg.out, "matrix.csv");
    write_matrix_csv(f, op);
  }
  {
    auto f = open_output(cfg.out, "spectrum.csv");
    write_spectrum_csv(f, spec);
  }
  auto f = open_output(cfg.out, "trace.txt");
  f << "cut " << cut << '\n'
    << "alpha " << format_real(cfg.alpha) << '\n'
    << "convention " << to_string(cfg.convention) << '\n'
    << "matrix_trace " << format_real(t.matrix_trace) << '\n'
    << "kernel_integral " << format_real(t.kernel_integral) << '\n'
    << "total_mass " << format_real(t.total_mass) << '\n'
    << "total_mass_truncated " << (t.total_mass_truncated ? "true" : "false") << '\n'
    << "eq41_value " << format_real(t.eq41_value) << '\n'
    << "half_prefactor_value " << format_real(t.half_prefactor_value) << '\n'
    << "asymmetry " << format_real(op.asymmetry) << '\n';
  out << "matrix_trace " << format_real(t.matrix_trace) << " total_mass " << format_real(t.total_mass) << '\n';
  return kSuccess;
}

int cmd_lattice(const RunConfig& cfg, const std::optional<std::string>& file, std::ostream& out) {
  LatticeSpec spec{cfg.r, cfg.extent > 0 ? cfg.extent : kDefaultLatticeExtent};
  spec.validate();
  std::optional<Measure> mu;
  if (file) mu = load_measure(*file);
  {
    auto f = open_output(cfg.out, "lattice.csv");
    f << "n,m,x,y" << (mu ? ",ball_mass" : "") << '\n';
    for (Complex a : lattice_points(spec)) {
      const auto [n, m] = cell_index(spec, a);
      f << n << ',' << m << ',' << format_real(a.real()) << ',' << format_real(a.imag());
      if (mu) f << ',' << format_real(ball_mass(*mu, a, spec.spacing));
      f << '\n';
    }
  }
  // Overlap count of the balls B(a, 2r) over the fundamental cell.
  const double h = 0.5 * spec.spacing;
  const int cover = covering_multiplicity(spec, 2.0, GridSpec::spanning(-h, h, 101));
  auto f = open_output(cfg.out, "covering.txt");
  f << "factor " << format_real(2.0) << '\n' << "covering_multiplicity " << cover << '\n';
  out << "covering_multiplicity " << cover << '\n';
  return kSuccess;
}

int cmd_report(const RunConfig& cfg, const std::string& kind, const std::string& file, std::ostream& out) {
  const Measure mu = load_measure(file);
  const FockConfig fock = cfg.fock();
  const QuadratureSpec quad = cfg.quadrature(mu.extent());
  const std::vector<int> trunc = cfg.trunc.empty() ? kReportTrunc : cfg.trunc;
  const ProbeOptions probe{cfg.window, 0.0};
  LatticeSpec lattice{cfg.r, cfg.extent};
  Report rep;
  if (kind == "carleson") {
    rep = carleson_report(fock, mu, cfg.r, quad, probe);
  } else if (kind == "vanishing") {
    rep = vanishing_report(fock, mu, cfg.r, {}, quad, probe);
  } else if (kind == "bounded") {
    rep = boundedness_report(fock, mu, trunc, quad, probe);
  } else if (kind == "compact") {
    rep = compactness_report(fock, mu, trunc, cfg.r, {}, quad, probe);
  } else if (kind == "schatten") {
    rep = schatten_report(fock, mu, cfg.p, cfg.r, lattice, trunc, quad, probe);
  } else if (kind == "symbol-schatten") {
    const auto* d = mu.as_density();
    if (!d) throw ParseError("type", "symbol-schatten needs a density measure file (its profile is the symbol)");
    rep = symbol_schatten_report(fock, d->profile, cfg.p, cfg.r, trunc, quad, probe);
  } else {
    throw InvalidArgument("unknown report kind '" + kind + "'");
  }
  {
    auto f = open_output(cfg.out, "report.json");
    f << to_json(rep);
  }
  for (const Arm& arm : rep.arms) {
    auto f = open_output(cfg.out, "arm_" + arm.id + ".csv");
    write_arm_csv(f, arm);
  }
  out << rep.kind << ": " << to_string(rep.overall) << '\n';
  return exit_for(rep.overall);
}

std::optional<std::string> json_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ParseError(key, "expected an array of integers");
      s += (s.empty() ? "" : ",") + x.dump();
    }
    return s;
  }
  throw ParseError(key, "expected a string or number");
}

std::optional<double> json_double(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_number()) throw ParseError(key, "expected a number");
  return j.at(key).get<double>();
}

}  // namespace

void RunConfig::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "--alpha must be positive");
  require(std::isfinite(r) && r > 0.0, "--r must be positive");
  require(extent >= 0, "--extent must be >= 0");
  require(p >= 1.0, "--p must be >= 1");
  require(std::isfinite(window) && window >= 0.0, "--window must be >= 0");
  for (std::size_t i = 0; i < trunc.size(); ++i) {
    require(trunc[i] >= 0, "--trunc values must be >= 0");
    if (i > 0) require(trunc[i] > trunc[i - 1], "--trunc values must be ascending");
  }
  if (quad_radius) require(std::isfinite(*quad_radius) && *quad_radius > 0.0, "--quad-radius must be positive");
  if (quad_step) require(std::isfinite(*quad_step) && *quad_step > 0.0, "--quad-step must be positive");
}

QuadratureSpec RunConfig::quadrature(double measure_extent) const {
  QuadratureSpec q = QuadratureSpec::defaults(alpha, measure_extent);
  if (quad_radius) q.radius = *quad_radius;
  if (quad_step) q.step = *quad_step;
  q.scheme = quad_scheme;
  if (q.scheme == Scheme::GaussLegendre) {
    q.nodes_per_axis = std::max(2, static_cast<int>(std::ceil(2.0 * q.radius / q.step)));
  }
  q.validate();
  return q;
}

std::vector<int> parse_trunc(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("trunc", "'" + item + "' is not an integer");
    }
    if (used != item.size()) throw ParseError("trunc", "'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("trunc", "empty truncation list");
  return out;
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("p", "'" + text + "' is not a number");
  }
  if (used != text.size()) throw ParseError("p", "'" + text + "' is not a number");
  return v;
}

Convention parse_convention(const std::string& text) {
  if (text == "paper") return Convention::PaperSum;
  if (text == "basis") return Convention::BasisSum;
  throw ParseError("convention", "expected 'paper' or 'basis', got '" + text + "'");
}

Scheme parse_scheme(const std::string& text) {
  if (text == "midpoint") return Scheme::Midpoint;
  if (text == "gauss-legendre" || text == "gl") return Scheme::GaussLegendre;
  throw ParseError("quad_scheme", "expected 'midpoint' or 'gauss-legendre', got '" + text + "'");
}

Overrides load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<config>", "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<config>", e.what());
  }
  if (!j.is_object()) throw ParseError("<config>", "expected a JSON object");
  Overrides o;
  o.alpha = json_double(j, "alpha");
  o.convention = json_string(j, "convention");
  o.r = json_double(j, "r");
  if (j.contains("extent")) {
    if (!j.at("extent").is_number_integer()) throw ParseError("extent", "expected an integer");
    o.extent = j.at("extent").get<int>();
  }
  o.p = json_string(j, "p");
  o.trunc = json_string(j, "trunc");
  o.window = json_double(j, "window");
  o.quad_radius = json_double(j, "quad_radius");
  o.quad_step = json_double(j, "quad_step");
  o.quad_scheme = json_string(j, "quad_scheme");
  o.out = json_string(j, "out");
  return o;
}

RunConfig resolve(const Overrides& flags, const Overrides& file) {
  RunConfig c;
  layer(c.alpha, flags.alpha, file.alpha);
  layer(c.r, flags.r, file.r);
  layer(c.extent, flags.extent, file.extent);
  layer(c.window, flags.window, file.window);
  if (auto v = pick(flags.convention, file.convention)) c.convention = parse_convention(*v);
  if (auto v = pick(flags.p, file.p)) c.p = parse_p(*v);
  if (auto v = pick(flags.trunc, file.trunc)) c.trunc = parse_trunc(*v);
  if (auto v = pick(flags.quad_scheme, file.quad_scheme)) c.quad_scheme = parse_scheme(*v);
  if (auto v = pick(flags.out, file.out)) c.out = *v;
  c.quad_radius = pick(flags.quad_radius, file.quad_radius);
  c.quad_step = pick(flags.quad_step, file.quad_step);
  c.validate();
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz operators and Berezin transforms on the harmonic Fock space"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides flags;
  std::optional<std::string> config_path;
  app.add_option("--alpha", flags.alpha, "Gaussian weight parameter (default 1)");
  app.add_option("--convention", flags.convention, "kernel convention: paper | basis (default basis)");
  app.add_option("--r", flags.r, "averaging radius / lattice spacing (default 1)");
  app.add_option("--extent", flags.extent, "lattice extent M (default automatic)");
  app.add_option("-p,--p", flags.p, "exponent p >= 1 or inf (default 2)");
  app.add_option("--trunc", flags.trunc, "truncation cut list N[,N...]");
  app.add_option("--window", flags.window, "probe half-width (default automatic)");
  app.add_option("--quad-radius", flags.quad_radius, "quadrature square half-width");
  app.add_option("--quad-step", flags.quad_step, "quadrature step");
  app.add_option("--quad-scheme", flags.quad_scheme, "midpoint | gauss-legendre");
  app.add_option("--out", flags.out, "output directory (default .)");
  app.add_option("--config", config_path, "JSON config file; flags take precedence");

  std::string measure_file;
  std::string kind;
  std::optional<std::string> lattice_measure;
  auto* berezin = app.add_subcommand("berezin", "sample the Berezin transform to berezin.csv");
  berezin->add_option("measure", measure_file, "measure file")->required();
  auto* field = app.add_subcommand("field", "sample the averaging function to field.csv");
  field->add_option("measure", measure_file, "measure file")->required();
  auto* op = app.add_subcommand("operator", "matrix.csv, spectrum.csv and trace.txt");
  op->add_option("measure", measure_file, "measure file")->required();
  auto* lattice = app.add_subcommand("lattice", "lattice points, ball masses and covering count");
  lattice->add_option("measure", lattice_measure, "optional measure file");
  auto* report = app.add_subcommand("report", "criteria report to report.json");
  report->add_option("kind", kind, "carleson | vanishing | bounded | compact | schatten | symbol-schatten")
      ->required();
  report->add_option("measure", measure_file, "measure file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    const Overrides file = config_path ? load_config_file(*config_path) : Overrides{};
    const RunConfig cfg = resolve(flags, file);
    if (*berezin) return cmd_berezin(cfg, measure_file, out);
    if (*field) return cmd_field(cfg, measure_file, out);
    if (*op) return cmd_operator(cfg, measure_file, out);
    if (*lattice) return cmd_lattice(cfg, lattice_measure, out);
    return cmd_report(cfg, kind, measure_file, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace hfock::cli
