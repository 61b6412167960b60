#pragma once

// Norms on the Gaussian-weighted spaces F^p_t.  For finite p the defining
// integral
//   ||F||_{p,t}^p = integral of |F(z) e^{-|z|^2/(2t)}|^p (p/(2 pi t))^n dV(z)
// is exactly the mu_{2t/p} integral of |F|^p, so it reduces to the tensor
// Gaussian driver.  For p = infinity the norm is the sup of the weighted
// modulus |F(z)| e^{-|z|^2/(2t)}, estimated over a plane lattice (n = 1).

#include <functional>

#include "focklab/fock.hpp"
#include "focklab/grid.hpp"

namespace focklab {

// ||F||_{p,t} for 0 < p < infinity, via gauss-Hermite tensor quadrature of
// order `order` per real axis against mu_{2t/p}.
double fock_norm(const FockParams& p, double pexp, int order,
                 const std::function<cplx(const CPoint&)>& F);

// ||F||_{infinity,t} over the given lattice (n = 1 only): the grid sup of
// |F(z)| e^{-|z|^2/(2t)}.
double fock_sup_norm(const FockParams& p, const PlaneGrid& grid,
                     const std::function<cplx(cplx)>& F);

}  // namespace focklab
