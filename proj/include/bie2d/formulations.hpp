#pragma once

#include "bie2d/operators.hpp"

#include <functional>
#include <optional>
#include <string>

namespace bie2d {

enum class Formulation { CFIEFK, CFIEFK2, CFIESK, CFIER, CFIERPS, SCFIE };

std::string to_string(Formulation f);
// Accepts the names above in any case; throws std::invalid_argument otherwise.
Formulation parse_formulation(const std::string& name);

enum class RhoMode { One, KRatio };
RhoMode parse_rho_mode(const std::string& name);

struct TransmissionProblem {
  double k1 = 1.0, k2 = 4.0;
  double rho = 1.0;
  double eta = 1.0;
  cplx kappa{2.5, 1.0};
  Vec2 direction{0.0, -1.0};

  // rho from the mode, eta defaults to k1, kappa to (k1+k2)/2 + i k1.
  static TransmissionProblem make(double k1, double k2, RhoMode mode, std::optional<double> eta = {},
                                  std::optional<cplx> kappa = {}, Vec2 direction = Vec2(0.0, -1.0));
  void validate() const;
};

// Traces of the total exterior field: Dirichlet values and the Neumann trace
// scaled by |x'|.
struct TraceVector {
  CVector dirichlet, neumann_w;
};

TraceVector incident_traces(const TransmissionProblem& problem, const GradedMesh& mesh);

// Every matrix a formulation needs, assembled once per mesh.
struct OperatorBank {
  int n = 0;
  OperatorBundle op1, op2;  // at k1 and k2
  CMatrix Ndiff;            // N_k1^w - N_k2^w
  CMatrix Skappa, Nkappa;   // complex-kappa regularizers (CFIER)
  CMatrix PSs, PSn;         // principal-symbol surrogates (CFIERPS)
};

OperatorBank build_operators(Formulation f, const TransmissionProblem& problem, const GradedMesh& mesh,
                             const QuadratureTables& tables);

struct LinearSystem {
  Formulation kind = Formulation::CFIESK;
  int size = 0;
  std::function<CVector(const CVector&)> apply;
  CVector rhs;
};

LinearSystem build_system(Formulation f, const TransmissionProblem& problem, const GradedMesh& mesh,
                          const OperatorBank& bank);

// gamma_D = -2 S_2 mu, gamma_N^w = -rho (I + 2 K_2^T,w) mu.
TraceVector scfie_to_traces(const TransmissionProblem& problem, const OperatorBank& bank, const CVector& mu_w);

// Splits a two-trace solution or maps an SCFIE density to traces.
TraceVector solution_to_traces(Formulation f, const TransmissionProblem& problem, const OperatorBank& bank,
                               const CVector& x);

// Unknowns of the discrete system for a mesh with 2n nodes.
int unknowns_for(Formulation f, int n);
// Half node count n for a requested number of unknowns; throws when not divisible.
int n_for_unknowns(Formulation f, int unknowns);

}  // namespace bie2d
