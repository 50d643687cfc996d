#pragma once
// Transient / ergodic partition of the chain induced by a confidence matrix.

#include <cstddef>
#include <limits>
#include <vector>

#include "obo/linalg.hpp"
#include "obo/model.hpp"

namespace obo {

inline constexpr std::size_t kTransient = std::numeric_limits<std::size_t>::max();

struct Decomposition {
  // Ascending agent indices.
  std::vector<std::size_t> transient;
  // Each class ascending; classes ordered by their smallest member.
  std::vector<std::vector<std::size_t>> classes;
  // Class index per agent, or kTransient.
  std::vector<std::size_t> class_of;

  std::size_t size() const noexcept { return class_of.size(); }
  bool has_transients() const noexcept { return !transient.empty(); }
  bool is_recurrent(std::size_t agent) const { return class_of[agent] != kTransient; }
};

// Closed strongly connected components of a directed graph given as
// adjacency lists. Linear in vertices plus edges.
Decomposition decompose_graph(const std::vector<std::vector<std::size_t>>& adjacency);

// Edge i -> j exists iff A(i, j) > 0.
Decomposition decompose(const ConfidenceMatrix& a);

// Restriction of A to class k; rows sum to one because classes are closed.
Matrix submatrix(const ConfidenceMatrix& a, const Decomposition& d, std::size_t k);

}  // namespace obo
