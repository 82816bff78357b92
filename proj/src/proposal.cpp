#include "heatmc/proposal.hpp"

namespace heatmc {

void ProposalConfig::validate() const {
  if (!(omega_max > 0.0)) throw InputError("proposal.omega_max must be positive");
  if (block_size != 2) throw InputError("proposal.block_size must be 2");
  if (!(k_min >= 0.0)) throw InputError("proposal.k_min must be >= 0");
}

void apply_move(ConductivityField& k, const BlockMove& move) {
  for (std::size_t di = 0; di < 2; ++di) {
    for (std::size_t dj = 0; dj < 2; ++dj) k(move.row + di, move.col + dj) += move.omega;
  }
}

Proposal propose(const ConductivityField& current, RandomStream& rng, const ProposalConfig& cfg) {
  if (current.rows() < 2 || current.cols() < 2) throw InputError("proposal needs at least a 2x2 grid");
  const std::size_t anchor_cols = current.cols() - 1;
  const std::uint64_t anchor = rng.index(static_cast<std::uint64_t>((current.rows() - 1) * anchor_cols));

  Proposal p;
  p.move.row = static_cast<std::size_t>(anchor / anchor_cols);
  p.move.col = static_cast<std::size_t>(anchor % anchor_cols);
  p.move.omega = rng.uniform(-cfg.omega_max, cfg.omega_max);
  p.candidate = current;
  apply_move(p.candidate, p.move);
  for (std::size_t di = 0; di < 2; ++di) {
    for (std::size_t dj = 0; dj < 2; ++dj) {
      if (!(p.candidate(p.move.row + di, p.move.col + dj) > cfg.k_min)) p.feasible = false;
    }
  }
  return p;
}

}  // namespace heatmc
