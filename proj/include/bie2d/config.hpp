#pragma once

#include "bie2d/formulations.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bie2d {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

enum class ReferenceKind { Refined, Mie, Zero, None };

struct BenchCase {
  double k1, k2;
  int unknowns;
};

struct RunConfig {
  GeometryParams geometry;

  double k1 = 1.0, k2 = 4.0;
  RhoMode rho_mode = RhoMode::One;
  std::optional<double> eta, kappa_re, kappa_im;
  Vec2 direction{0.0, -1.0};

  std::vector<int> unknowns;
  std::optional<int> p;  // default 3, or 4 for SCFIE

  std::vector<Formulation> formulations{Formulation::CFIESK};

  double tol = 1e-12;
  int max_iter = 0;  // 0: system dimension

  int num_dirs = 1024;

  std::string csv_path, farfield_path;

  std::vector<BenchCase> cases;

  ReferenceKind reference = ReferenceKind::Refined;
  int reference_unknowns = 0;  // 0: twice the largest count in the run
  double reference_tol = 1e-12;
  std::string reference_cache;  // directory for cached reference far fields

  int threads = 0;

  TransmissionProblem problem(double k1, double k2) const;
  int order(Formulation f) const { return p.value_or(f == Formulation::SCFIE ? 4 : 3); }
};

// Flat `section.key = value` lines, `#` starts a comment.  Unknown keys and
// malformed values raise ConfigError with the 1-based line number.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

std::string to_string(ReferenceKind k);

}  // namespace bie2d
