#include "heatmc/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace heatmc {
namespace {

double norm_inf(std::span<const double> v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

// Solves A x = b with one step of iterative refinement when the first pass
// misses the residual bound.
void solve_checked(const LinearSystem& sys, BandedLU& lu, std::vector<double>& x,
                   std::vector<double>& work) {
  const std::size_t dim = sys.matrix.dim();
  lu.factorize(sys.matrix);
  x.resize(dim);
  work.resize(dim);
  lu.solve(sys.rhs, x);

  const double bound = 1e-10 * (1.0 + norm_inf(sys.rhs));
  for (int pass = 0; pass < 2; ++pass) {
    sys.matrix.multiply(x, work);
    double res = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      work[p] = sys.rhs[p] - work[p];
      res = std::max(res, std::abs(work[p]));
    }
    if (std::isfinite(res) && res <= bound) return;
    if (pass == 1 || !std::isfinite(res)) {
      throw SolveError("forward solve residual " + std::to_string(res) + " exceeds bound " +
                           std::to_string(bound) + " (pivot ratio " +
                           std::to_string(lu.pivot_ratio()) + ")",
                       lu.pivot_ratio());
    }
    std::vector<double> dx(dim);
    lu.solve(work, dx);
    for (std::size_t p = 0; p < dim; ++p) x[p] += dx[p];
  }
}

}  // namespace

LinearSystem assemble_system(const ConductivityField& k, const GridSpec& g) {
  g.validate();
  require_shape(k, g);
  require_positive(k, 0.0);

  const std::size_t n = g.n;
  const std::size_t m = g.m;
  const double hx = g.hx();
  const double hy = g.hy();
  const double cx = 1.0 / (hx * hx);
  const double cy = 1.0 / (hy * hy);
  const double q = g.input_flux();

  LinearSystem sys{SparseMatrix(n * m), std::vector<double>(n * m, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t p = i * m + j;
      const double kap = k(i, j);
      double diag = -2.0 * cx - 2.0 * cy - 2.0 * g.h_conv / (kap * g.thickness);
      double west = cx, east = cx, south = cy, north = cy;
      double rhs = 0.0;

      // Ghost node across an edge: u_ghost = u_mirror - 2h (du/dn_in) with
      // K du/dn_in = H u (convective) or = -q (heated segment).
      if (j == 0 || j == m - 1) {
        if (j == 0) { east += cx; west = 0.0; }
        else { west += cx; east = 0.0; }
        if (g.is_cpu_node(i, j)) {
          rhs -= 2.0 * q / (kap * hx);
        } else {
          diag -= 2.0 * g.h_conv / (kap * hx);
        }
      }
      if (i == 0 || i == n - 1) {
        if (i == 0) { north += cy; south = 0.0; }
        else { south += cy; north = 0.0; }
        diag -= 2.0 * g.h_conv / (kap * hy);
      }

      if (south != 0.0) sys.matrix.add(p - m, south);
      if (west != 0.0) sys.matrix.add(p - 1, west);
      sys.matrix.add(p, diag);
      if (east != 0.0) sys.matrix.add(p + 1, east);
      if (north != 0.0) sys.matrix.add(p + m, north);
      sys.matrix.finish_row();
      sys.rhs[p] = rhs;
    }
  }
  return sys;
}

double residual_inf(const LinearSystem& sys, const TemperatureField& u) {
  std::vector<double> au(sys.matrix.dim());
  sys.matrix.multiply(u.values(), au);
  double r = 0.0;
  for (std::size_t p = 0; p < au.size(); ++p) r = std::max(r, std::abs(au[p] - sys.rhs[p]));
  return r;
}

ForwardSolver::ForwardSolver(GridSpec g) : grid_(g) { grid_.validate(); }

TemperatureField ForwardSolver::solve(const ConductivityField& k) {
  const LinearSystem sys = assemble_system(k, grid_);
  std::vector<double> x;
  solve_checked(sys, lu_, x, work_);
  return TemperatureField(grid_.n, grid_.m, std::move(x));
}

TemperatureField solve_forward(const ConductivityField& k, const GridSpec& g) {
  ForwardSolver solver(g);
  return solver.solve(k);
}

PseudoTransientResult pseudo_transient_solve(const ConductivityField& k, const GridSpec& g,
                                             const PseudoTransientOptions& opts) {
  if (!(opts.dt > 0.0) || !(opts.tol > 0.0)) {
    throw InputError("pseudo-transient solve needs dt > 0 and tol > 0");
  }
  const LinearSystem sys = assemble_system(k, g);
  const std::size_t dim = sys.matrix.dim();
  const double half = 0.5 * opts.dt;

  // (I - dt/2 A) u+ = (I + dt/2 A) u - dt b
  SparseMatrix lhs(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t e = sys.matrix.row_begin(r); e < sys.matrix.row_end(r); ++e) {
      const std::size_t c = sys.matrix.col(e);
      const double v = -half * sys.matrix.value(e) + (c == r ? 1.0 : 0.0);
      lhs.add(c, v);
    }
    lhs.finish_row();
  }
  BandedLU lu;
  lu.factorize(lhs);

  std::vector<double> u(dim, 0.0), next(dim), au(dim), rhs(dim);
  PseudoTransientResult result;
  double prev_change = std::numeric_limits<double>::infinity();
  for (std::size_t step = 1; step <= opts.max_steps; ++step) {
    sys.matrix.multiply(u, au);
    for (std::size_t p = 0; p < dim; ++p) rhs[p] = u[p] + half * au[p] - opts.dt * sys.rhs[p];
    lu.solve(rhs, next);

    double change = 0.0;
    for (std::size_t p = 0; p < dim; ++p) change = std::max(change, std::abs(next[p] - u[p]));
    u.swap(next);

    if (change == 0.0) {
      result.steps = step;
      result.last_change = 0.0;
      result.u = TemperatureField(g.n, g.m, std::move(u));
      return result;
    }
    if (change <= opts.tol && change < prev_change) {
      const double rho = change / prev_change;
      if (change * rho / (1.0 - rho) <= opts.tol) {
        result.steps = step;
        result.last_change = change;
        result.u = TemperatureField(g.n, g.m, std::move(u));
        return result;
      }
    }
    prev_change = change;
  }
  throw SolveError("pseudo-transient march did not reach tolerance within " +
                       std::to_string(opts.max_steps) + " steps",
                   lu.pivot_ratio());
}

BoundaryVector boundary_trace(const TemperatureField& u) {
  const std::size_t n = u.rows();
  const std::size_t m = u.cols();
  BoundaryVector d;
  if (n == 0 || m == 0) return d;
  d.values.reserve(n < 2 || m < 2 ? n * m : 2 * (n + m) - 4);
  for (std::size_t i = 0; i < n; ++i) {
    const bool full_row = (i == 0 || i == n - 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (full_row || j == 0 || j == m - 1) d.values.push_back(u(i, j));
    }
  }
  return d;
}

TemperatureField embed_boundary(const BoundaryVector& d, std::size_t n, std::size_t m,
                                double interior) {
  if (n < 2 || m < 2 || d.size() != 2 * (n + m) - 4) {
    throw InputError("boundary vector length " + std::to_string(d.size()) +
                     " does not fit a " + std::to_string(n) + "x" + std::to_string(m) + " grid");
  }
  TemperatureField u(n, m, interior);
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool full_row = (i == 0 || i == n - 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (full_row || j == 0 || j == m - 1) u(i, j) = d.values[at++];
    }
  }
  return u;
}

BoundaryVector observe(const TemperatureField& u, MisfitDomain domain) {
  if (domain == MisfitDomain::full) return BoundaryVector{u.raw()};
  return boundary_trace(u);
}

}  // namespace heatmc
