#pragma once

// Sampling lattices used for profiles, sup-norms, and fit diagnostics.
// These are evaluation grids, not quadrature rules: no weights, just a
// reproducible set of points controlled by an extent and a step.

#include <cmath>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/fock.hpp"

namespace focklab {

struct RadialGrid {
  double extent = 8.0;  // largest radius sampled
  double step = 0.05;

  void validate() const {
    if (!(extent > 0.0) || !std::isfinite(extent))
      throw PreconditionError("grid-extent", "grid extent must be positive");
    if (!(step > 0.0) || step > extent)
      throw PreconditionError("grid-step",
                              "grid step must be positive and at most the extent");
  }

  // 0, step, 2*step, ..., up to and including the largest multiple <= extent.
  std::vector<double> radii() const {
    validate();
    std::vector<double> r;
    const int count = static_cast<int>(std::floor(extent / step + 1e-9)) + 1;
    r.reserve(count);
    for (int i = 0; i < count; ++i) r.push_back(i * step);
    return r;
  }
};

struct PlaneGrid {
  double extent = 8.0;  // half-width of the square sampled, n = 1
  double step = 0.1;

  void validate() const {
    if (!(extent > 0.0) || !std::isfinite(extent))
      throw PreconditionError("grid-extent", "grid extent must be positive");
    if (!(step > 0.0) || step > extent)
      throw PreconditionError("grid-step",
                              "grid step must be positive and at most the extent");
  }

  // Square lattice over [-extent, extent]^2, row-major from the bottom-left.
  std::vector<cplx> points() const {
    validate();
    const int half = static_cast<int>(std::floor(extent / step + 1e-9));
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(2 * half + 1) * (2 * half + 1));
    for (int iy = -half; iy <= half; ++iy)
      for (int ix = -half; ix <= half; ++ix)
        pts.push_back(cplx{ix * step, iy * step});
    return pts;
  }
};

}  // namespace focklab
