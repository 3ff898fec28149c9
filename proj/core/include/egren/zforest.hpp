#pragma once

// Connected partitions of a graph and Zimmermann forests (laminar families of
// vertex subsets, each standing for its full vertex part).

#include <vector>

#include "egren/graph.hpp"
#include "egren/partition.hpp"

namespace egren::zforest {

using partition::Mask;

inline constexpr int kZForestCap = 6;

// Partitions of V(g) whose blocks induce connected full vertex parts.
std::vector<partition::Partition> connected_partitions(const graph::Graph& g, int cap = partition::kDefaultCap);

// Nested or disjoint.
bool non_overlapping(Mask a, Mask b);

struct ZForest {
  std::vector<Mask> members;  // sorted
  bool restricted = false;

  bool contains(Mask m) const;
  bool operator==(const ZForest& o) const { return members == o.members && restricted == o.restricted; }
};

// Vertex subsets admissible as forest members: all nonempty subsets, or for
// restricted forests the connected ones with divergence degree >= 0 in dimension d.
std::vector<Mask> forest_candidates(const graph::Graph& g, bool restricted, int d);

// All pairwise non-overlapping families of candidates, the empty one included.
std::vector<ZForest> zimmermann_forests(const graph::Graph& g, bool restricted, int d, int cap = kZForestCap);

// No further candidate can be added.
bool is_maximal(const ZForest& u, const std::vector<Mask>& candidates);

// Smallest member strictly containing m, or the ground set if there is none.
Mask parent_in(const ZForest& u, Mask m, Mask ground);

// For every member G other than the ground set, parent(G) \ G is a member.
bool relative_complement_closed(const ZForest& u, Mask ground);

// The members of U other than the ground set that are maximal under inclusion
// have their vertex complement in U.
bool top_level_complement_closed(const ZForest& u, Mask ground);

// Distinct blocks of an EG forest as a Zimmermann forest.
ZForest forest_of_chain(const partition::EGForest& f);

}  // namespace egren::zforest
