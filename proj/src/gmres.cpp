#include "bie2d/gmres.hpp"

#include <cmath>
#include <stdexcept>

namespace bie2d {

GmresResult gmres(const MatVec& apply, const CVector& b, double tol, int max_iter) {
  const Eigen::Index n = b.size();
  if (n == 0) throw std::invalid_argument("gmres: empty right-hand side");
  if (!(tol > 0.0)) throw std::invalid_argument("gmres: tolerance must be positive");
  const double bnorm = b.norm();
  if (!(bnorm > 0.0)) throw std::invalid_argument("gmres: zero right-hand side");
  const int m = max_iter > 0 ? std::min<int>(max_iter, int(n)) : int(n);

  std::vector<CVector> V;
  V.reserve(m + 1);
  V.push_back(b / bnorm);
  CMatrix H = CMatrix::Zero(m + 1, m);
  std::vector<cplx> cs(m), sn(m);
  CVector g = CVector::Zero(m + 1);
  g(0) = bnorm;

  GmresResult res;
  int k = 0;
  for (; k < m; ++k) {
    CVector w = apply(V[k]);
    if (w.size() != n) throw std::invalid_argument("gmres: operator changes the vector length");
    for (int i = 0; i <= k; ++i) {
      H(i, k) = V[i].dot(w);
      w -= H(i, k) * V[i];
    }
    const double hnext = w.norm();
    H(k + 1, k) = hnext;
    for (int i = 0; i < k; ++i) {
      const cplx t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
      H(i + 1, k) = -std::conj(sn[i]) * H(i, k) + cs[i] * H(i + 1, k);
      H(i, k) = t;
    }
    const cplx a = H(k, k);
    const double r = std::hypot(std::abs(a), hnext);
    if (r == 0.0) break;
    cs[k] = std::abs(a) / r;
    sn[k] = std::abs(a) == 0.0 ? cplx(1.0) : (a / std::abs(a)) * hnext / r;
    H(k, k) = cs[k] * a + sn[k] * hnext;
    H(k + 1, k) = 0.0;
    g(k + 1) = -std::conj(sn[k]) * g(k);
    g(k) = cs[k] * g(k);
    const double rel = std::abs(g(k + 1)) / bnorm;
    res.residual_history.push_back(rel);
    const bool breakdown = hnext <= 1e-14 * r;
    if (rel <= tol || breakdown) {
      ++k;
      break;
    }
    V.push_back(w / hnext);
  }

  res.iterations = k;
  CVector y = CVector::Zero(k);
  if (k > 0) {
    y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  }
  res.solution = CVector::Zero(n);
  for (int i = 0; i < k; ++i) res.solution += y(i) * V[i];
  res.converged = !res.residual_history.empty() && res.residual_history.back() <= tol;
  return res;
}

}  // namespace bie2d
