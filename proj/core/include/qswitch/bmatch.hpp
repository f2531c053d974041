#pragma once

#include <cstdint>
#include <vector>

namespace qswitch {

// -------------------------------------------------------------------------
// Capacitated b-matchings on the complete graph with a global budget:
// integer edge allocations x_ij (i < j) with per-node degree caps and a
// total-cardinality cap. Closed-form maximum, the constructive greedy,
// an exhaustive oracle and an exact max-weight solver.
// -------------------------------------------------------------------------

/// Per-node capacities plus the global budget.
struct CapacityVector {
  std::vector<int> caps;
  std::int64_t budget = 0;

  void validate() const;  // throws std::invalid_argument
  std::int64_t total() const;
  int max_cap() const;
};

/// Dense index of the unordered pair (i, j), i < j, in an n-node complete
/// graph; row-major over the upper triangle.
std::size_t pair_index(int n, int i, int j);

/// Integer allocation over the edges of the complete graph.
class AllocationVector {
 public:
  explicit AllocationVector(int node_count);

  int node_count() const { return n_; }
  int at(int i, int j) const;
  void add(int i, int j, int units = 1);

  std::int64_t total_units() const;
  std::vector<std::int64_t> node_loads() const;

  /// Both feasibility constraints: node loads within caps, total within budget.
  bool feasible_for(const CapacityVector& cv) const;

  struct Edge {
    int i, j, units;
  };
  /// Non-zero edges in lexicographic (i, j) order.
  std::vector<Edge> edges() const;

  bool operator==(const AllocationVector&) const = default;

 private:
  int n_;
  std::vector<int> units_;
};

/// min{ B, floor(sum/2), sum - max }: the exact maximum cardinality of a
/// feasible allocation. No size bound.
std::int64_t emax_closed_form(const CapacityVector& cv);

/// Constructive optimum. When sum - max <= floor(sum/2) a star on the
/// largest-capacity node suffices; otherwise pair the two largest residuals
/// until fewer than two nodes remain. Either way stop after B units.
/// Ties break to the lowest node index, so the output is deterministic.
AllocationVector greedy_max_allocation(const CapacityVector& cv);

struct BruteForceResult {
  std::int64_t value;
  AllocationVector alloc;
};

/// Exhaustive depth-first enumeration over edge multiplicities with residual
/// pruning. Intentionally ignorant of the closed form so it can serve as its
/// oracle. Requires sum(caps) <= 24 and <= 8 nodes; throws size_error above.
BruteForceResult brute_force_max(const CapacityVector& cv);

struct MaxWeightResult {
  double value;
  AllocationVector alloc;
};

/// Exact max-weight allocation via branch-and-bound over edge
/// multiplicities. weights is indexed by pair_index and must cover all
/// n(n-1)/2 edges. Same tractability bound as brute_force_max. With unit
/// weights the value equals emax_closed_form.
MaxWeightResult max_weight_allocation(const CapacityVector& cv,
                                      const std::vector<double>& weights);

}  // namespace qswitch
