#include "obo/decompose.hpp"

#include <algorithm>

#include "obo/error.hpp"

namespace obo {

Decomposition decompose_graph(const std::vector<std::vector<std::size_t>>& adjacency) {
  const std::size_t n = adjacency.size();
  constexpr std::size_t kUnvisited = kTransient;

  // Iterative Tarjan.
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t counter = 0, num_comps = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adjacency[v].size()) {
        const std::size_t w = adjacency[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = num_comps;
        } while (w != v);
        ++num_comps;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }

  std::vector<bool> closed(num_comps, true);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : adjacency[v])
      if (comp[w] != comp[v]) closed[comp[v]] = false;

  // Scanning vertices in ascending order numbers classes by smallest member.
  Decomposition d;
  d.class_of.assign(n, kTransient);
  std::vector<std::size_t> class_id(num_comps, kTransient);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = comp[v];
    if (!closed[c]) {
      d.transient.push_back(v);
      continue;
    }
    if (class_id[c] == kTransient) {
      class_id[c] = d.classes.size();
      d.classes.emplace_back();
    }
    d.class_of[v] = class_id[c];
    d.classes[class_id[c]].push_back(v);
  }
  return d;
}

Decomposition decompose(const ConfidenceMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) > 0.0) adjacency[i].push_back(j);
  return decompose_graph(adjacency);
}

Matrix submatrix(const ConfidenceMatrix& a, const Decomposition& d, std::size_t k) {
  if (k >= d.classes.size()) throw Error(ErrorCode::InvalidArgument, "class index out of range");
  const auto& members = d.classes[k];
  Matrix e(members.size(), members.size());
  for (std::size_t r = 0; r < members.size(); ++r)
    for (std::size_t c = 0; c < members.size(); ++c) e(r, c) = a(members[r], members[c]);
  return e;
}

}  // namespace obo
