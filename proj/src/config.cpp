#include "bie2d/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bie2d {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v) {
  size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument("not a number: " + v);
  return x;
}

int to_int(const std::string& v) {
  int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw std::invalid_argument("not an integer: " + v);
  return x;
}

double positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
  return x;
}

ReferenceKind parse_reference(const std::string& v) {
  if (v == "refined") return ReferenceKind::Refined;
  if (v == "mie") return ReferenceKind::Mie;
  if (v == "zero") return ReferenceKind::Zero;
  if (v == "none") return ReferenceKind::None;
  throw std::invalid_argument("reference.kind must be refined, mie, zero or none");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"geometry.kind", [](RunConfig& c, const std::string& v) { c.geometry.kind = v; }},
      {"geometry.side", [](RunConfig& c, const std::string& v) { c.geometry.side = positive(to_double(v), "side"); }},
      {"geometry.notch_width",
       [](RunConfig& c, const std::string& v) { c.geometry.notch_width = positive(to_double(v), "notch_width"); }},
      {"geometry.notch_depth",
       [](RunConfig& c, const std::string& v) { c.geometry.notch_depth = positive(to_double(v), "notch_depth"); }},
      {"geometry.q", [](RunConfig& c, const std::string& v) { c.geometry.q = to_int(v); }},
      {"geometry.radius", [](RunConfig& c, const std::string& v) { c.geometry.radius = positive(to_double(v), "radius"); }},
      {"geometry.semi_a", [](RunConfig& c, const std::string& v) { c.geometry.semi_a = positive(to_double(v), "semi_a"); }},
      {"geometry.semi_b", [](RunConfig& c, const std::string& v) { c.geometry.semi_b = positive(to_double(v), "semi_b"); }},
      {"geometry.vertices",
       [](RunConfig& c, const std::string& v) {
         c.geometry.vertices.clear();
         for (const auto& pt : split(v, ';')) {
           const auto xy = split(pt, ',');
           if (xy.size() != 2) throw std::invalid_argument("vertices are `x,y; x,y; ...`");
           c.geometry.vertices.emplace_back(to_double(xy[0]), to_double(xy[1]));
         }
       }},
      {"physics.k1", [](RunConfig& c, const std::string& v) { c.k1 = positive(to_double(v), "k1"); }},
      {"physics.k2", [](RunConfig& c, const std::string& v) { c.k2 = positive(to_double(v), "k2"); }},
      {"physics.rho_mode", [](RunConfig& c, const std::string& v) { c.rho_mode = parse_rho_mode(v); }},
      {"physics.eta", [](RunConfig& c, const std::string& v) { c.eta = to_double(v); }},
      {"physics.kappa_re", [](RunConfig& c, const std::string& v) { c.kappa_re = positive(to_double(v), "kappa_re"); }},
      {"physics.kappa_im", [](RunConfig& c, const std::string& v) { c.kappa_im = positive(to_double(v), "kappa_im"); }},
      {"physics.direction",
       [](RunConfig& c, const std::string& v) {
         const auto xy = split(v, ',');
         if (xy.size() != 2) throw std::invalid_argument("direction is `x, y`");
         Vec2 d(to_double(xy[0]), to_double(xy[1]));
         if (!(d.norm() > 0.0)) throw std::invalid_argument("direction must be nonzero");
         c.direction = d / d.norm();
       }},
      {"discretization.unknowns",
       [](RunConfig& c, const std::string& v) {
         c.unknowns.clear();
         for (const auto& u : split(v, ',')) c.unknowns.push_back(int(positive(to_int(u), "unknowns")));
         if (c.unknowns.empty()) throw std::invalid_argument("empty unknowns list");
       }},
      {"discretization.p",
       [](RunConfig& c, const std::string& v) {
         const int p = to_int(v);
         if (p < 2) throw std::invalid_argument("p must be at least 2");
         c.p = p;
       }},
      {"formulation",
       [](RunConfig& c, const std::string& v) {
         c.formulations.clear();
         for (const auto& f : split(v, ',')) c.formulations.push_back(parse_formulation(f));
         if (c.formulations.empty()) throw std::invalid_argument("empty formulation list");
       }},
      {"gmres.tol",
       [](RunConfig& c, const std::string& v) {
         c.tol = to_double(v);
         if (!(c.tol > 0.0 && c.tol < 1.0)) throw std::invalid_argument("gmres.tol must lie in (0, 1)");
       }},
      {"gmres.max_iter",
       [](RunConfig& c, const std::string& v) {
         c.max_iter = to_int(v);
         if (c.max_iter < 0) throw std::invalid_argument("gmres.max_iter must be >= 0");
       }},
      {"farfield.num_dirs", [](RunConfig& c, const std::string& v) { c.num_dirs = int(positive(to_int(v), "num_dirs")); }},
      {"output.csv_path", [](RunConfig& c, const std::string& v) { c.csv_path = v; }},
      {"output.farfield_path", [](RunConfig& c, const std::string& v) { c.farfield_path = v; }},
      {"bench.cases",
       [](RunConfig& c, const std::string& v) {
         c.cases.clear();
         for (const auto& item : split(v, ',')) {
           const auto parts = split(item, ':');
           if (parts.size() != 3) throw std::invalid_argument("bench cases are `k1:k2:unknowns, ...`");
           c.cases.push_back({positive(to_double(parts[0]), "k1"), positive(to_double(parts[1]), "k2"),
                              int(positive(to_int(parts[2]), "unknowns"))});
         }
       }},
      {"reference.kind", [](RunConfig& c, const std::string& v) { c.reference = parse_reference(v); }},
      {"reference.unknowns",
       [](RunConfig& c, const std::string& v) { c.reference_unknowns = int(positive(to_int(v), "reference.unknowns")); }},
      {"reference.tol",
       [](RunConfig& c, const std::string& v) {
         c.reference_tol = to_double(v);
         if (!(c.reference_tol > 0.0 && c.reference_tol < 1.0)) throw std::invalid_argument("reference.tol must lie in (0, 1)");
       }},
      {"reference.cache", [](RunConfig& c, const std::string& v) { c.reference_cache = v; }},
      {"run.threads", [](RunConfig& c, const std::string& v) { c.threads = int(positive(to_int(v), "threads")); }},
      {"threads", [](RunConfig& c, const std::string& v) { c.threads = int(positive(to_int(v), "threads")); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

TransmissionProblem RunConfig::problem(double a, double b) const {
  std::optional<cplx> kappa;
  if (kappa_re || kappa_im) kappa = cplx(kappa_re.value_or(0.5 * (a + b)), kappa_im.value_or(a));
  return TransmissionProblem::make(a, b, rho_mode, eta, kappa, direction);
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected `section.key = value`");
    const std::string key = trim(text.substr(0, eq)), value = trim(text.substr(eq + 1));
    if (value.empty()) throw ConfigError(line, "missing value for " + key);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(line, "unknown key " + key);
    try {
      it->second(c, value);
    } catch (const std::exception& e) {
      throw ConfigError(line, key + ": " + e.what());
    }
  }
  try {
    c.problem(c.k1, c.k2);
  } catch (const std::exception& e) {
    throw ConfigError(line, e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open " + path);
  return parse_config(in);
}

std::string to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::Refined: return "refined";
    case ReferenceKind::Mie: return "mie";
    case ReferenceKind::Zero: return "zero";
    case ReferenceKind::None: return "none";
  }
  return "?";
}

}  // namespace bie2d
