#pragma once

#include <cstddef>

#include "heatmc/field.hpp"
#include "heatmc/rng.hpp"

namespace heatmc {

struct ProposalConfig {
  double omega_max = 0.005;
  std::size_t block_size = 2;  // fixed
  double k_min = 1e-6;

  void validate() const;
};

/// A 2x2 block shift: cells (row..row+1, col..col+1) each move by omega.
struct BlockMove {
  std::size_t row = 0;
  std::size_t col = 0;
  double omega = 0.0;

  BlockMove reversed() const { return {row, col, -omega}; }
};

struct Proposal {
  ConductivityField candidate;
  BlockMove move;
  bool feasible = true;  ///< false if a shifted cell dropped to k_min or below
};

/// Adds move.omega to the four cells of the block.
void apply_move(ConductivityField& k, const BlockMove& move);

/// Draws the anchor uniformly over the (n-1)(m-1) top-left positions, then
/// omega ~ U[-omega_max, omega_max), and shifts the block.
Proposal propose(const ConductivityField& current, RandomStream& rng, const ProposalConfig& cfg);

}  // namespace heatmc
