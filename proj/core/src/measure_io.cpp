#include "hfock/measure_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace hfock {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw ParseError(join(path, key), "expected a number");
  return v.get<double>();
}

double non_negative(const json& obj, const std::string& key, const std::string& path) {
  const double v = number(obj, key, path);
  if (!(v >= 0.0)) throw ParseError(join(path, key), "must be >= 0");
  return v;
}

double positive(const json& obj, const std::string& key, const std::string& path) {
  const double v = number(obj, key, path);
  if (!(v > 0.0)) throw ParseError(join(path, key), "must be > 0");
  return v;
}

Complex point(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) return {0.0, 0.0};
  const std::string p = join(path, key);
  const json& c = obj.at(key);
  return {number(c, "x", p), number(c, "y", p)};
}

Measure parse_atomic(const json& doc) {
  const json& atoms = field(doc, "atoms", "");
  if (!atoms.is_array()) throw ParseError("atoms", "expected an array");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string p = "atoms[" + std::to_string(i) + "]";
    out.push_back({{number(atoms[i], "x", p), number(atoms[i], "y", p)}, non_negative(atoms[i], "w", p)});
  }
  return Measure::atomic(std::move(out));
}

Measure parse_lattice(const json& doc) {
  const json& lat = field(doc, "lattice", "");
  LatticeSpec spec;
  spec.spacing = positive(lat, "r", "lattice");
  const json& ext = field(lat, "extent", "lattice");
  if (!ext.is_number_integer() || ext.get<long>() < 0) throw ParseError("lattice.extent", "expected an integer >= 0");
  spec.extent = ext.get<int>();
  const json& w = field(lat, "weights", "lattice");
  if (!w.is_array()) throw ParseError("lattice.weights", "expected an array");
  if (w.size() != spec.size()) {
    throw ParseError("lattice.weights", "expected " + std::to_string(spec.size()) + " entries, got " +
                                            std::to_string(w.size()));
  }
  std::vector<double> weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string p = "lattice.weights[" + std::to_string(i) + "]";
    if (!w[i].is_number()) throw ParseError(p, "expected a number");
    const double v = w[i].get<double>();
    if (!(v >= 0.0)) throw ParseError(p, "must be >= 0");
    weights.push_back(v);
  }
  return Measure::lattice_weighted(spec, weights);
}

DensityProfile parse_profile(const std::string& family, const json& params) {
  const std::string p = "density.params";
  if (family == "constant") return density::Constant{non_negative(params, "c", p)};
  if (family == "gaussian_bump") {
    return density::GaussianBump{non_negative(params, "amplitude", p), point(params, "center", p),
                                 positive(params, "width", p)};
  }
  if (family == "disk_indicator") {
    return density::DiskIndicator{point(params, "center", p), positive(params, "radius", p),
                                  non_negative(params, "height", p)};
  }
  if (family == "annulus") {
    density::Annulus a{point(params, "center", p), non_negative(params, "r_inner", p),
                       positive(params, "r_outer", p), non_negative(params, "height", p)};
    if (!(a.inner_radius < a.outer_radius)) throw ParseError(p + ".r_inner", "must be < r_outer");
    return a;
  }
  if (family == "radial_poly_gaussian") {
    const json& c = field(params, "coefficients", p);
    if (!c.is_array() || c.empty()) throw ParseError(p + ".coefficients", "expected a non-empty array");
    density::RadialPolyGaussian r;
    r.coefficients.clear();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string q = p + ".coefficients[" + std::to_string(i) + "]";
      if (!c[i].is_number() || !(c[i].get<double>() >= 0.0)) throw ParseError(q, "expected a number >= 0");
      r.coefficients.push_back(c[i].get<double>());
    }
    r.decay = positive(params, "decay", p);
    return r;
  }
  throw ParseError("density.family", "unknown family '" + family + "'");
}

Measure parse_density(const json& doc) {
  const json& d = field(doc, "density", "");
  const json& fam = field(d, "family", "density");
  if (!fam.is_string()) throw ParseError("density.family", "expected a string");
  const json& params = field(d, "params", "density");
  if (!params.is_object()) throw ParseError("density.params", "expected an object");
  DensityProfile profile = parse_profile(fam.get<std::string>(), params);
  return Measure::density(std::move(profile), positive(d, "support_radius", "density"));
}

}  // namespace

Measure parse_measure(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");
  const json& type = field(doc, "type", "");
  if (!type.is_string()) throw ParseError("type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "atomic") return parse_atomic(doc);
  if (t == "lattice_weighted") return parse_lattice(doc);
  if (t == "density") return parse_density(doc);
  throw ParseError("type", "unknown measure type '" + t + "'");
}

Measure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

}  // namespace hfock
