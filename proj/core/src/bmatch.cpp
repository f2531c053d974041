#include "qswitch/bmatch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qswitch/errors.hpp"

namespace qswitch {

namespace {

constexpr std::int64_t kMaxBruteForceTotalCaps = 24;
constexpr int kMaxBruteForceNodes = 8;

void check_tractable(const CapacityVector& cv) {
  if (cv.total() > kMaxBruteForceTotalCaps ||
      static_cast<int>(cv.caps.size()) > kMaxBruteForceNodes)
    throw size_error("exhaustive search requires sum(caps) <= 24 and <= 8 nodes");
}

struct EdgeList {
  std::vector<std::pair<int, int>> edges;  // lexicographic (i, j), i < j
  explicit EdgeList(int n) {
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
};

}  // namespace

void CapacityVector::validate() const {
  if (caps.size() < 2) throw std::invalid_argument("CapacityVector: need >= 2 nodes");
  for (int c : caps)
    if (c < 0) throw std::invalid_argument("CapacityVector: capacities must be >= 0");
  if (budget < 0) throw std::invalid_argument("CapacityVector: budget must be >= 0");
}

std::int64_t CapacityVector::total() const {
  std::int64_t t = 0;
  for (int c : caps) t += c;
  return t;
}

int CapacityVector::max_cap() const {
  return *std::max_element(caps.begin(), caps.end());
}

std::size_t pair_index(int n, int i, int j) {
  if (!(0 <= i && i < j && j < n)) throw std::invalid_argument("pair_index: need 0 <= i < j < n");
  const std::size_t row_start =
      static_cast<std::size_t>(i) * (2 * n - i - 1) / 2;
  return row_start + static_cast<std::size_t>(j - i - 1);
}

AllocationVector::AllocationVector(int node_count)
    : n_(node_count),
      units_(static_cast<std::size_t>(node_count) * (node_count - 1) / 2, 0) {
  if (node_count < 2) throw std::invalid_argument("AllocationVector: need >= 2 nodes");
}

int AllocationVector::at(int i, int j) const { return units_[pair_index(n_, i, j)]; }

void AllocationVector::add(int i, int j, int units) {
  units_[pair_index(n_, i, j)] += units;
}

std::int64_t AllocationVector::total_units() const {
  std::int64_t t = 0;
  for (int u : units_) t += u;
  return t;
}

std::vector<std::int64_t> AllocationVector::node_loads() const {
  std::vector<std::int64_t> load(n_, 0);
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++k) {
      load[i] += units_[k];
      load[j] += units_[k];
    }
  return load;
}

bool AllocationVector::feasible_for(const CapacityVector& cv) const {
  if (static_cast<int>(cv.caps.size()) != n_) return false;
  if (total_units() > cv.budget) return false;
  const auto loads = node_loads();
  for (int i = 0; i < n_; ++i)
    if (loads[i] > cv.caps[i]) return false;
  return true;
}

std::vector<AllocationVector::Edge> AllocationVector::edges() const {
  std::vector<Edge> out;
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++k)
      if (units_[k] > 0) out.push_back({i, j, units_[k]});
  return out;
}

std::int64_t emax_closed_form(const CapacityVector& cv) {
  cv.validate();
  const std::int64_t total = cv.total();
  return std::min({cv.budget, total / 2, total - cv.max_cap()});
}

AllocationVector greedy_max_allocation(const CapacityVector& cv) {
  cv.validate();
  const int n = static_cast<int>(cv.caps.size());
  AllocationVector alloc(n);
  const std::int64_t total = cv.total();
  const int max_cap = cv.max_cap();
  std::int64_t budget_left = cv.budget;

  if (total - max_cap <= total / 2) {
    // Star construction: pair every unit of capacity on the other nodes with
    // the (lowest-index) largest node. The case condition guarantees the
    // star center never runs out first.
    int center = 0;
    for (int i = 0; i < n; ++i)
      if (cv.caps[i] == max_cap) {
        center = i;
        break;
      }
    for (int j = 0; j < n && budget_left > 0; ++j) {
      if (j == center) continue;
      const int units = static_cast<int>(
          std::min<std::int64_t>(cv.caps[j], budget_left));
      if (units > 0) {
        alloc.add(std::min(center, j), std::max(center, j), units);
        budget_left -= units;
      }
    }
    return alloc;
  }

  // Max-residual pairing: repeatedly match the two largest residuals
  // (lowest index on ties), one unit at a time, until fewer than two nodes
  // have capacity left or the budget is spent.
  std::vector<int> residual = cv.caps;
  while (budget_left > 0) {
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i) {
      if (u < 0 || residual[i] > residual[u]) {
        v = u;
        u = i;
      } else if (v < 0 || residual[i] > residual[v]) {
        v = i;
      }
    }
    if (u < 0 || v < 0 || residual[v] <= 0) break;
    alloc.add(std::min(u, v), std::max(u, v));
    --residual[u];
    --residual[v];
    --budget_left;
  }
  return alloc;
}

namespace {

// Branch-and-bound over edge multiplicities for the exhaustive oracles. Two
// passes: a descending-multiplicity pass that establishes the optimum value
// quickly, then an ascending pass that stops at the first allocation
// attaining it, i.e. the lexicographically smallest maximizer. The bound
// uses only the trivial facts (budget, half of remaining capacity), never
// the closed form these oracles are meant to check.
struct Search {
  const std::vector<std::pair<int, int>>& edges;
  const std::vector<double>* weights;  // null for cardinality search
  std::vector<int> residual;
  std::int64_t budget_left;
  AllocationVector current;
  double current_value = 0.0;
  double best_value = 0.0;  // the empty allocation is always feasible
  AllocationVector best;
  bool witness_found = false;

  Search(const CapacityVector& cv, const std::vector<std::pair<int, int>>& e,
         const std::vector<double>* w)
      : edges(e),
        weights(w),
        residual(cv.caps),
        budget_left(cv.budget),
        current(static_cast<int>(cv.caps.size())),
        best(static_cast<int>(cv.caps.size())) {}

  double upper_bound(std::size_t edge_pos) const {
    std::int64_t res_total = 0;
    for (int r : residual) res_total += r;
    const std::int64_t units = std::min(budget_left, res_total / 2);
    if (!weights) return current_value + static_cast<double>(units);
    double wmax = 0.0;
    for (std::size_t e = edge_pos; e < edges.size(); ++e)
      wmax = std::max(wmax, (*weights)[e]);
    return current_value + static_cast<double>(units) * wmax;
  }

  template <typename Body>
  void for_each_multiplicity(std::size_t edge_pos, bool descending, Body body) {
    const auto [i, j] = edges[edge_pos];
    const double w = weights ? (*weights)[edge_pos] : 1.0;
    const int max_units = static_cast<int>(std::min<std::int64_t>(
        std::min(residual[i], residual[j]), budget_left));
    // restore the value by assignment: every path then carries the same
    // canonical edge-order sum in both passes
    const double saved_value = current_value;
    for (int step = 0; step <= max_units; ++step) {
      const int m = descending ? max_units - step : step;
      residual[i] -= m;
      residual[j] -= m;
      budget_left -= m;
      current.add(i, j, m);
      current_value = saved_value + w * m;
      body();
      residual[i] += m;
      residual[j] += m;
      budget_left += m;
      current.add(i, j, -m);
      current_value = saved_value;
    }
  }

  void value_pass(std::size_t edge_pos) {
    best_value = std::max(best_value, current_value);
    if (edge_pos == edges.size() || budget_left == 0) return;
    if (upper_bound(edge_pos) <= best_value) return;
    for_each_multiplicity(edge_pos, /*descending=*/true,
                          [&] { value_pass(edge_pos + 1); });
  }

  void witness_pass(std::size_t edge_pos) {
    if (witness_found) return;
    if (current_value >= best_value) {
      best = current;
      witness_found = true;
      return;
    }
    if (edge_pos == edges.size() || budget_left == 0) return;
    if (upper_bound(edge_pos) < best_value) return;
    for_each_multiplicity(edge_pos, /*descending=*/false,
                          [&] { witness_pass(edge_pos + 1); });
  }

  void run() {
    value_pass(0);
    witness_pass(0);
  }
};

}  // namespace

BruteForceResult brute_force_max(const CapacityVector& cv) {
  cv.validate();
  check_tractable(cv);
  const EdgeList el(static_cast<int>(cv.caps.size()));
  Search st(cv, el.edges, nullptr);
  st.run();
  return {static_cast<std::int64_t>(std::llround(st.best_value)), st.best};
}

MaxWeightResult max_weight_allocation(const CapacityVector& cv,
                                      const std::vector<double>& weights) {
  cv.validate();
  check_tractable(cv);
  const int n = static_cast<int>(cv.caps.size());
  const EdgeList el(n);
  if (weights.size() != el.edges.size())
    throw std::invalid_argument("max_weight_allocation: need one weight per edge");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("max_weight_allocation: weights must be >= 0");
  Search st(cv, el.edges, &weights);
  st.run();
  return {st.best_value, st.best};
}

}  // namespace qswitch
