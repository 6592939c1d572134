#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "jury/distributions.hpp"
#include "jury/metrics.hpp"
#include "jury/procedures.hpp"
#include "jury/sar_solver.hpp"

namespace jury {

/// One Monte Carlo experiment: every procedure runs on the same panels.
struct SimulationRequest {
  GroupModel model;
  int j = 12;
  int d = 6;
  int p = 6;
  std::vector<Procedure> procedures{Procedure::struck, Procedure::strike_replace, Procedure::random};
  std::size_t n_sims = 50000;
  std::uint64_t seed = 0x5EED0001;
  /// Tail thresholds (ascending) for the at-least-x statistics.
  std::vector<double> thresholds;
};

struct ProcedureSummary {
  Procedure procedure;
  SimulationSummary summary;
  friend bool operator==(const ProcedureSummary&, const ProcedureSummary&) = default;
};

struct SimulationResult {
  std::vector<ProcedureSummary> per_procedure;  // same order as the request

  const SimulationSummary& at(Procedure proc) const;
  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Replication i draws its panel from Rng(seed, i, 0); the random procedure
/// takes its subset from Rng(seed, i, 1). Results depend only on the request.
SimulationResult simulate_serial(const SimulationRequest& request);

/// OpenMP over fixed blocks of replications, merged in block order; equal to
/// simulate_serial bit for bit for any worker count.
SimulationResult simulate_parallel(const SimulationRequest& request, int workers);

/// Per-jury trace rows for the first `max_sims` replications:
/// sim_id,procedure,seat_index,c,group
void write_trace(std::ostream& os, const SimulationRequest& request, std::size_t max_sims);

}  // namespace jury
