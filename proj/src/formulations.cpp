#include "bie2d/formulations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace bie2d {

namespace {

constexpr cplx I{0.0, 1.0};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

bool needs_full(Formulation f) {
  return f == Formulation::CFIEFK || f == Formulation::CFIEFK2 || f == Formulation::CFIER ||
         f == Formulation::CFIERPS;
}

bool needs_second_kind(Formulation f) {
  return f == Formulation::CFIESK || f == Formulation::CFIER || f == Formulation::CFIERPS;
}

// Block 2x2 operator on [dirichlet; neumann_w].
struct Blocks {
  CMatrix a11, a12, a21, a22;
  CVector apply(const CVector& x) const {
    const Eigen::Index N = a11.rows();
    CVector y(2 * N);
    const auto x1 = x.head(N), x2 = x.tail(N);
    y.head(N).noalias() = a11 * x1;
    y.head(N).noalias() += a12 * x2;
    y.tail(N).noalias() = a21 * x1;
    y.tail(N).noalias() += a22 * x2;
    return y;
  }
};

std::shared_ptr<Blocks> cfk_blocks(const TransmissionProblem& p, const OperatorBank& b) {
  auto B = std::make_shared<Blocks>();
  B->a11 = -(b.op1.K + b.op2.K);
  B->a12 = b.op1.S + b.op2.S / p.rho;
  B->a21 = -(b.op1.N + p.rho * b.op2.N);
  B->a22 = b.op1.KT + b.op2.KT;
  return B;
}

std::shared_ptr<Blocks> csk_blocks(const TransmissionProblem& p, const OperatorBank& b) {
  auto B = std::make_shared<Blocks>();
  const double c = 0.5 * (1.0 / p.rho + 1.0);
  B->a11 = b.op2.K - b.op1.K / p.rho;
  B->a11.diagonal().array() += c;
  B->a12 = (b.op1.S - b.op2.S) / p.rho;
  B->a21 = -b.Ndiff;
  B->a22 = b.op1.KT - b.op2.KT / p.rho;
  B->a22.diagonal().array() += c;
  return B;
}

CVector stack(const CVector& a, const CVector& b) {
  CVector v(a.size() + b.size());
  v << a, b;
  return v;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("build_system: missing operator ") + what);
}

}  // namespace

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::CFIEFK: return "CFIEFK";
    case Formulation::CFIEFK2: return "CFIEFK2";
    case Formulation::CFIESK: return "CFIESK";
    case Formulation::CFIER: return "CFIER";
    case Formulation::CFIERPS: return "CFIERPS";
    case Formulation::SCFIE: return "SCFIE";
  }
  return "?";
}

Formulation parse_formulation(const std::string& name) {
  const std::string s = lower(name);
  if (s == "cfiefk") return Formulation::CFIEFK;
  if (s == "cfiefk2") return Formulation::CFIEFK2;
  if (s == "cfiesk") return Formulation::CFIESK;
  if (s == "cfier") return Formulation::CFIER;
  if (s == "cfierps") return Formulation::CFIERPS;
  if (s == "scfie") return Formulation::SCFIE;
  throw std::invalid_argument("unknown formulation: " + name);
}

RhoMode parse_rho_mode(const std::string& name) {
  const std::string s = lower(name);
  if (s == "one") return RhoMode::One;
  if (s == "k_ratio") return RhoMode::KRatio;
  throw std::invalid_argument("unknown rho mode: " + name);
}

TransmissionProblem TransmissionProblem::make(double k1, double k2, RhoMode mode, std::optional<double> eta,
                                              std::optional<cplx> kappa, Vec2 direction) {
  TransmissionProblem p;
  p.k1 = k1;
  p.k2 = k2;
  p.rho = mode == RhoMode::One ? 1.0 : k1 * k1 / (k2 * k2);
  p.eta = eta.value_or(k1);
  p.kappa = kappa.value_or(cplx(0.5 * (k1 + k2), k1));
  p.direction = direction;
  p.validate();
  return p;
}

void TransmissionProblem::validate() const {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("problem: wavenumbers must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("problem: rho must be positive");
  if (eta == 0.0 || !std::isfinite(eta)) throw std::invalid_argument("problem: eta must be nonzero");
  if (!(kappa.imag() > 0.0) || !(kappa.real() > 0.0))
    throw std::invalid_argument("problem: kappa needs positive real and imaginary parts");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw std::invalid_argument("problem: direction must be a unit vector");
}

TraceVector incident_traces(const TransmissionProblem& p, const GradedMesh& mesh) {
  const int N = mesh.size();
  TraceVector t{CVector(N), CVector(N)};
  for (int i = 0; i < N; ++i) {
    const cplx e = std::exp(I * p.k1 * mesh[i].x.dot(p.direction));
    t.dirichlet(i) = e;
    t.neumann_w(i) = I * p.k1 * p.direction.dot(mesh[i].nu) * e;
  }
  return t;
}

OperatorBank build_operators(Formulation f, const TransmissionProblem& p, const GradedMesh& mesh,
                             const QuadratureTables& tables) {
  p.validate();
  OperatorRequest r1, r2;
  r1.S = r2.S = true;
  r1.K = needs_full(f) || needs_second_kind(f) || f == Formulation::SCFIE;
  r2.K = needs_full(f) || needs_second_kind(f);
  r1.KT = r2.KT = true;
  r1.N = r2.N = needs_full(f);
  r1.HD = r2.HD = needs_second_kind(f) || f == Formulation::SCFIE;

  OperatorBank b;
  b.n = mesh.n();
  b.op1 = assemble_bundle(p.k1, mesh, tables, r1);
  b.op2 = assemble_bundle(p.k2, mesh, tables, r2);
  if (r1.HD) {
    if (p.k1 == p.k2) {
      b.Ndiff = CMatrix::Zero(mesh.size(), mesh.size());
    } else {
      b.Ndiff = b.op1.HD - b.op2.HD;
    }
    b.op1.HD.resize(0, 0);
    b.op2.HD.resize(0, 0);
  }
  if (f == Formulation::CFIER) {
    b.Skappa = assemble_single(p.kappa, mesh, tables).entries;
    b.Nkappa = assemble_hyper_w(p.kappa, mesh, tables).entries;
  }
  if (f == Formulation::CFIERPS) {
    b.PSs = assemble_ps(Symbol::S, p.kappa, mesh, tables).entries;
    b.PSn = assemble_ps(Symbol::N, p.kappa, mesh, tables).entries;
  }
  return b;
}

LinearSystem build_system(Formulation f, const TransmissionProblem& p, const GradedMesh& mesh,
                          const OperatorBank& b) {
  if (b.n != mesh.n()) throw std::invalid_argument("build_system: operators built on a different mesh");
  const int N = mesh.size();
  const TraceVector inc = incident_traces(p, mesh);
  LinearSystem sys;
  sys.kind = f;
  sys.size = f == Formulation::SCFIE ? N : 2 * N;

  require(b.op1.S.rows() == N && b.op2.S.rows() == N && b.op1.KT.rows() == N && b.op2.KT.rows() == N, "S/K^T");
  if (needs_full(f)) require(b.op1.N.rows() == N && b.op2.N.rows() == N && b.op2.K.rows() == N, "N^w");
  if (needs_second_kind(f) || f == Formulation::SCFIE) require(b.Ndiff.rows() == N, "N1-N2");

  switch (f) {
    case Formulation::CFIEFK: {
      auto A = cfk_blocks(p, b);
      sys.apply = [A](const CVector& x) { return A->apply(x); };
      sys.rhs = stack(inc.dirichlet, inc.neumann_w);
      break;
    }
    case Formulation::CFIEFK2: {
      auto A = cfk_blocks(p, b);
      sys.apply = [A](const CVector& x) { return A->apply(A->apply(x)); };
      sys.rhs = A->apply(stack(inc.dirichlet, inc.neumann_w));
      break;
    }
    case Formulation::CFIESK: {
      auto A = csk_blocks(p, b);
      sys.apply = [A](const CVector& x) { return A->apply(x); };
      sys.rhs = stack(inc.dirichlet / p.rho, inc.neumann_w);
      break;
    }
    case Formulation::CFIER:
    case Formulation::CFIERPS: {
      const bool ps = f == Formulation::CFIERPS;
      const CMatrix& Sk = ps ? b.PSs : b.Skappa;
      const CMatrix& Nk = ps ? b.PSn : b.Nkappa;
      require(Sk.rows() == N && Nk.rows() == N, ps ? "PS" : "S_kappa/N_kappa");
      auto A = cfk_blocks(p, b);
      auto C = csk_blocks(p, b);
      auto R = std::make_shared<std::pair<CMatrix, CMatrix>>(Sk, Nk);
      const double alpha = p.rho / (p.rho + 1.0), beta = 2.0 / (1.0 + p.rho), rho = p.rho;
      sys.apply = [A, C, R, alpha, beta, rho, N](const CVector& x) {
        CVector y = alpha * C->apply(x);
        const CVector f = A->apply(x);
        y.head(N).noalias() += beta * (R->first * f.tail(N));
        y.tail(N).noalias() -= (beta * rho) * (R->second * f.head(N));
        return y;
      };
      const CVector top = (inc.dirichlet + 2.0 * (Sk * inc.neumann_w)) / (rho + 1.0);
      const CVector bottom = (-2.0 * rho * (Nk * inc.dirichlet) + rho * inc.neumann_w) / (rho + 1.0);
      sys.rhs = stack(top, bottom);
      break;
    }
    case Formulation::SCFIE: {
      require(b.op1.K.rows() == N, "K_1");
      struct Ops {
        CMatrix S1, S2, K1, KT1, KT2, Nd;
      };
      auto o = std::make_shared<Ops>(Ops{b.op1.S, b.op2.S, b.op1.K, b.op1.KT, b.op2.KT, b.Ndiff});
      const double rho = p.rho, eta = p.eta;
      sys.apply = [o, rho, eta](const CVector& mu) {
        const CVector a = o->KT2 * mu;
        const CVector s2 = o->S2 * mu;
        const CVector mu2a = mu + 2.0 * a;
        const CVector Kmu = -(rho * a - 2.0 * (o->KT2 * a)) - rho * (o->KT1 * mu2a) + 2.0 * (o->Nd * s2);
        const CVector Smu = -rho * (o->S1 * mu2a) - (s2 - 2.0 * (o->K1 * s2));
        return CVector(-0.5 * (1.0 + rho) * mu + Kmu - I * eta * Smu);
      };
      sys.rhs = inc.neumann_w - I * eta * inc.dirichlet;
      break;
    }
  }
  return sys;
}

TraceVector scfie_to_traces(const TransmissionProblem& p, const OperatorBank& b, const CVector& mu) {
  TraceVector t;
  t.dirichlet = -2.0 * (b.op2.S * mu);
  t.neumann_w = -p.rho * (mu + 2.0 * (b.op2.KT * mu));
  return t;
}

TraceVector solution_to_traces(Formulation f, const TransmissionProblem& p, const OperatorBank& b,
                               const CVector& x) {
  if (f == Formulation::SCFIE) return scfie_to_traces(p, b, x);
  const Eigen::Index N = x.size() / 2;
  return {x.head(N), x.tail(N)};
}

int unknowns_for(Formulation f, int n) { return f == Formulation::SCFIE ? 2 * n : 4 * n; }

int n_for_unknowns(Formulation f, int unknowns) {
  const int div = f == Formulation::SCFIE ? 2 : 4;
  if (unknowns <= 0 || unknowns % div != 0)
    throw std::invalid_argument("unknowns must be a positive multiple of " + std::to_string(div) + " for " +
                                to_string(f));
  return unknowns / div;
}

}  // namespace bie2d
