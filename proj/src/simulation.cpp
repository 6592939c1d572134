#include "jury/simulation.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include <omp.h>

namespace jury {

namespace {

constexpr std::size_t kBlockSize = 1024;
constexpr std::uint64_t kPanelLane = 0;
constexpr std::uint64_t kRandomLane = 1;

class Replicator {
 public:
  explicit Replicator(const SimulationRequest& request) : request_(request) {
    if (request.j < 1 || request.d < 0 || request.p < 0) throw std::invalid_argument("simulate: invalid sizes");
    if (request.procedures.empty()) throw std::invalid_argument("simulate: no procedures requested");
    const bool needs_table =
        std::find(request.procedures.begin(), request.procedures.end(), Procedure::strike_replace) !=
        request.procedures.end();
    if (needs_table) table_.emplace(solve(request.model.pooled(), request.j, request.d, request.p));
    median_ = request.model.pooled().quantile(0.5);
  }

  SimulationResult empty_result() const {
    SimulationResult result;
    for (Procedure proc : request_.procedures) {
      result.per_procedure.push_back({proc, SimulationSummary(request_.j, request_.thresholds, median_)});
    }
    return result;
  }

  JuryOutcome run(Procedure proc, const Panel& panel, std::size_t sim) const {
    switch (proc) {
      case Procedure::struck:
        return run_struck(panel, request_.j, request_.d, request_.p);
      case Procedure::strike_replace:
        return run_strike_replace(panel, *table_);
      case Procedure::random: {
        Rng rng(request_.seed, sim, kRandomLane);
        return run_random(panel, request_.j, rng);
      }
    }
    throw std::logic_error("unknown procedure");
  }

  Panel panel(std::size_t sim) const {
    Rng rng(request_.seed, sim, kPanelLane);
    return draw_panel(request_.model, request_.j + request_.d + request_.p, rng);
  }

  void replicate(std::size_t sim, SimulationResult& into) const {
    const Panel drawn = panel(sim);
    for (auto& entry : into.per_procedure) entry.summary.accumulate(run(entry.procedure, drawn, sim));
  }

 private:
  const SimulationRequest& request_;
  std::optional<EquilibriumTable> table_;
  double median_ = 0.5;
};

}  // namespace

const SimulationSummary& SimulationResult::at(Procedure proc) const {
  for (const auto& entry : per_procedure) {
    if (entry.procedure == proc) return entry.summary;
  }
  throw std::out_of_range("SimulationResult: procedure not simulated");
}

SimulationResult simulate_serial(const SimulationRequest& request) {
  const Replicator rep(request);
  SimulationResult result = rep.empty_result();
  for (std::size_t sim = 0; sim < request.n_sims; ++sim) rep.replicate(sim, result);
  return result;
}

SimulationResult simulate_parallel(const SimulationRequest& request, int workers) {
  if (workers < 1) throw std::invalid_argument("simulate_parallel: workers must be positive");
  const Replicator rep(request);
  const std::size_t n_blocks = (request.n_sims + kBlockSize - 1) / kBlockSize;
  std::vector<SimulationResult> blocks(n_blocks, rep.empty_result());

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const std::size_t end = std::min(request.n_sims, (b + 1) * kBlockSize);
    for (std::size_t sim = b * kBlockSize; sim < end; ++sim) rep.replicate(sim, blocks[b]);
  }

  SimulationResult result = rep.empty_result();
  for (const auto& block : blocks) {
    for (std::size_t i = 0; i < result.per_procedure.size(); ++i) {
      result.per_procedure[i].summary.merge(block.per_procedure[i].summary);
    }
  }
  return result;
}

void write_trace(std::ostream& os, const SimulationRequest& request, std::size_t max_sims) {
  const Replicator rep(request);
  const auto old_precision = os.precision(17);
  os << "sim_id,procedure,seat_index,c,group\n";
  for (std::size_t sim = 0; sim < std::min(max_sims, request.n_sims); ++sim) {
    const Panel drawn = rep.panel(sim);
    for (Procedure proc : request.procedures) {
      const JuryOutcome out = rep.run(proc, drawn, sim);
      for (std::size_t seat = 0; seat < out.selected.size(); ++seat) {
        os << sim << ',' << procedure_name(proc) << ',' << seat << ',' << out.selected[seat].c << ','
           << (out.selected[seat].group == Group::a ? 'a' : 'b') << '\n';
      }
    }
  }
  os.precision(old_precision);
}

}  // namespace jury
