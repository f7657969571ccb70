#ifndef FRACDIM_TRANSPORT_HPP
#define FRACDIM_TRANSPORT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

/// Optimal value of the balanced transportation problem
///   min sum_ij f_ij cost(i, j)  s.t.  sum_j f_ij = supply_i, sum_i f_ij = demand_j, f >= 0
/// by successive shortest paths with Johnson potentials on the dense residual
/// graph. `cost` is row-major supply.size() x demand.size() and nonnegative.
inline double min_cost_transport(std::span<const double> supply, std::span<const double> demand,
                                 std::span<const double> cost) {
  const std::size_t a = supply.size();
  const std::size_t b = demand.size();
  require(cost.size() == a * b, ErrorKind::invalid_input, "min_cost_transport: cost shape");
  const std::size_t n = a + b + 2;
  const std::size_t src = a + b;
  const std::size_t dst = a + b + 1;
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr double cap_eps = 1e-18;

  std::vector<double> cap(n * n, 0.0);
  std::vector<double> edge_cost(n * n, 0.0);
  auto at = [n](std::size_t u, std::size_t v) { return u * n + v; };

  for (std::size_t i = 0; i < a; ++i) cap[at(src, i)] = supply[i];
  for (std::size_t j = 0; j < b; ++j) cap[at(a + j, dst)] = demand[j];
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      cap[at(i, a + j)] = inf;
      edge_cost[at(i, a + j)] = cost[i * b + j];
      edge_cost[at(a + j, i)] = -cost[i * b + j];
    }

  const double target = std::min(compensated_sum(supply), compensated_sum(demand));
  double shipped = 0.0;
  std::vector<double> potential(n, 0.0);
  std::vector<double> dist(n);
  std::vector<std::size_t> parent(n);
  std::vector<char> done(n);

  for (std::size_t round = 0; round < 16 * n * n && target - shipped > 1e-15; ++round) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(done.begin(), done.end(), 0);
    dist[src] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v] && dist[v] < inf && (u == n || dist[v] < dist[u])) u = v;
      if (u == n) break;
      done[u] = 1;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || cap[at(u, v)] <= cap_eps) continue;
        const double reduced = std::max(0.0, edge_cost[at(u, v)] + potential[u] - potential[v]);
        if (dist[u] + reduced < dist[v]) {
          dist[v] = dist[u] + reduced;
          parent[v] = u;
        }
      }
    }
    if (dist[dst] == inf) break;
    for (std::size_t v = 0; v < n; ++v)
      if (dist[v] < inf) potential[v] += dist[v];

    double push = target - shipped;
    for (std::size_t v = dst; v != src; v = parent[v]) push = std::min(push, cap[at(parent[v], v)]);
    for (std::size_t v = dst; v != src; v = parent[v]) {
      const std::size_t u = parent[v];
      if (cap[at(u, v)] != inf) cap[at(u, v)] -= push;
      if (cap[at(v, u)] != inf) cap[at(v, u)] += push;
    }
    shipped += push;
  }
  require(target - shipped <= 1e-12, ErrorKind::numerical_failure,
          "min_cost_transport: flow did not reach the target mass");

  // forward edges i -> a+j keep infinite capacity; the shipped flow sits on the
  // residual reverse edges a+j -> i
  CompensatedSum total;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) total.add(cap[at(a + j, i)] * cost[i * b + j]);
  return total.value();
}

}  // namespace fracdim

#endif  // FRACDIM_TRANSPORT_HPP
