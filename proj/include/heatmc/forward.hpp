#pragma once

#include <cstddef>

#include "heatmc/field.hpp"
#include "heatmc/grid.hpp"
#include "heatmc/sparse.hpp"

namespace heatmc {

/// Five-point discretization of
///   u_xx + u_yy = 2 H / (K thickness) u
/// with ghost-node elimination of K du/dn_in = H u on the convective edges and
/// an inward flux q = P / (segment length * thickness) on the CPU segment.
/// Row p = i*m + j; the matrix has at most five entries per row and b is zero
/// away from the CPU segment.
LinearSystem assemble_system(const ConductivityField& k, const GridSpec& g);

/// Direct banded solve of the steady fin equation. Throws SolveError if the
/// residual bound |A u - b|_inf <= 1e-10 (1 + |b|_inf) cannot be met.
TemperatureField solve_forward(const ConductivityField& k, const GridSpec& g);

/// max_p |(A u - b)_p|
double residual_inf(const LinearSystem& sys, const TemperatureField& u);

struct PseudoTransientOptions {
  double dt = 0.1;
  double tol = 1e-8;
  std::size_t max_steps = 1'000'000;
};

struct PseudoTransientResult {
  TemperatureField u;
  std::size_t steps = 0;
  double last_change = 0.0;
};

/// Trapezoidal (Crank-Nicolson) march of u_t = A u - b to steady state.
/// Stops once the successive max-norm change is at most tol and the
/// geometric tail estimate of the remaining error is also below tol.
/// Throws SolveError when max_steps is hit first.
PseudoTransientResult pseudo_transient_solve(const ConductivityField& k, const GridSpec& g,
                                             const PseudoTransientOptions& opts = {});

/// Boundary nodes of u in row-major scan order; length 2(n+m) - 4.
BoundaryVector boundary_trace(const TemperatureField& u);

/// Inverse of boundary_trace on the boundary: writes d into the boundary
/// nodes of an n x m field, interior filled with `interior`.
TemperatureField embed_boundary(const BoundaryVector& d, std::size_t n, std::size_t m,
                                double interior = 0.0);

/// Which nodes enter the data misfit.
enum class MisfitDomain { boundary, full };

/// Observation vector for the given domain: boundary trace or every node.
BoundaryVector observe(const TemperatureField& u, MisfitDomain domain);

/// Reusable forward model for the MCMC inner loop; keeps the factorization
/// workspace between calls. Not thread-safe; one per chain.
class ForwardSolver {
 public:
  explicit ForwardSolver(GridSpec g);

  const GridSpec& grid() const { return grid_; }
  TemperatureField solve(const ConductivityField& k);

 private:
  GridSpec grid_;
  BandedLU lu_;
  std::vector<double> work_;
};

}  // namespace heatmc
