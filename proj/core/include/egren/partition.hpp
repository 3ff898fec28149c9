#pragma once

// Set partitions of small ground sets, the refinement lattice and
// Epstein-Glaser forests (chains of partitions containing the finest one).
//
// Ground sets are subsets of {1..30} encoded as bit masks, bit i <-> element i.

#include <cstdint>
#include <string>
#include <vector>

namespace egren::partition {

using Mask = std::uint32_t;

inline constexpr int kDefaultCap = 10;
inline constexpr int kForestCap = 7;
inline constexpr int kHardCap = 30;

Mask ground_mask(int n);
int popcount(Mask m);
int lowest(Mask m);
std::vector<int> elements(Mask m);
Mask mask_of(const std::vector<int>& elems);
std::string mask_to_string(Mask m);  // "{1,3}"

class Partition {
 public:
  Partition() = default;
  // Blocks must be nonempty, disjoint and cover `ground` (NotAPartition).
  Partition(Mask ground, std::vector<Mask> blocks);
  static Partition finest(Mask ground);
  static Partition coarsest(Mask ground);

  Mask ground() const { return ground_; }
  const std::vector<Mask>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool is_finest() const;
  bool is_coarsest() const { return blocks_.size() == 1; }
  Mask block_of(int element) const;
  // Nonempty intersections of the blocks with `sub`.
  Partition restricted(Mask sub) const;
  std::vector<std::vector<int>> as_lists() const;
  std::string to_string() const;

  bool operator==(const Partition& o) const { return ground_ == o.ground_ && blocks_ == o.blocks_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  // Lexicographic on the sorted-list representation.
  bool operator<(const Partition& o) const;

 private:
  Mask ground_ = 0;
  std::vector<Mask> blocks_;  // sorted by least element
};

std::uint64_t bell_number(int n);

std::vector<Partition> enumerate_partitions(int n, int cap = kDefaultCap);
std::vector<Partition> enumerate_partitions_of(Mask ground);

bool refines(const Partition& p, const Partition& q);

struct LatticeBounds {
  Partition join;
  Partition meet;
};
LatticeBounds lattice_bounds(const Partition& p, const Partition& q);

// All partitions strictly coarser than p.
std::vector<Partition> coarsenings(const Partition& p);

class EGForest {
 public:
  EGForest() = default;
  // Chain ordered from finest to coarsest; must start with the finest partition
  // and be strictly increasing in refinement.
  explicit EGForest(std::vector<Partition> chain);

  const std::vector<Partition>& chain() const { return chain_; }
  Mask ground() const { return chain_.front().ground(); }
  const Partition& coarsest() const { return chain_.back(); }
  bool full() const { return chain_.back().is_coarsest(); }
  bool normal() const { return !full(); }
  // Full and every step merges exactly two blocks.
  bool maximal() const;
  bool contains(const Partition& p) const;
  // Distinct blocks over all partitions of the chain, sorted.
  std::vector<Mask> block_union() const;
  std::string to_string() const;

  bool operator==(const EGForest& o) const { return chain_ == o.chain_; }
  bool operator<(const EGForest& o) const;

 private:
  std::vector<Partition> chain_;
};

std::vector<EGForest> enumerate_eg_forests(int n, int cap = kForestCap);
std::vector<EGForest> enumerate_eg_forests_of(Mask ground, int cap = kForestCap);

// Split a normal forest into one full forest per block of its coarsest partition.
std::vector<EGForest> decompose_normal_forest(const EGForest& f);

// All forests on the union of the ground sets whose restrictions are the given chains.
std::vector<EGForest> interleave(const std::vector<EGForest>& fs);

// Number of chain elements at least as coarse as p (the coarsest has position 1).
int chain_position(const EGForest& f, const Partition& p);

}  // namespace egren::partition
