#include "focklab/norms.hpp"

#include <cmath>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

double fock_norm(const FockParams& p, double pexp, int order,
                 const std::function<cplx(const CPoint&)>& F) {
  p.validate();
  if (!(pexp > 0.0) || !std::isfinite(pexp))
    throw PreconditionError("p", "norm exponent must be positive and finite");
  const cplx val = quad::integrate_gaussian(
      p.n, 2.0 * p.t / pexp, order,
      [&](const CPoint& z) { return cplx{std::pow(std::abs(F(z)), pexp), 0.0}; });
  return std::pow(val.real(), 1.0 / pexp);
}

double fock_sup_norm(const FockParams& p, const PlaneGrid& grid,
                     const std::function<cplx(cplx)>& F) {
  p.validate();
  if (p.n != 1)
    throw PreconditionError("n", "the lattice sup-norm is implemented for n = 1");
  double best = 0.0;
  for (cplx z : grid.points()) {
    const double v = std::abs(F(z)) * std::exp(-std::norm(z) / (2.0 * p.t));
    if (v > best) best = v;
  }
  return best;
}

}  // namespace focklab
