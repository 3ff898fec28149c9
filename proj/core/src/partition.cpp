#include "egren/partition.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "egren/error.hpp"

namespace egren::partition {

Mask ground_mask(int n) {
  if (n < 0 || n > kHardCap) fail(Errc::CapExceeded, "ground set size " + std::to_string(n));
  Mask m = 0;
  for (int i = 1; i <= n; ++i) m |= Mask{1} << i;
  return m;
}

int popcount(Mask m) { return std::popcount(m); }

int lowest(Mask m) { return m ? std::countr_zero(m) : -1; }

std::vector<int> elements(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

Mask mask_of(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) {
    if (e < 1 || e > kHardCap) fail(Errc::IndexOutOfRange, "element " + std::to_string(e));
    m |= Mask{1} << e;
  }
  return m;
}

std::string mask_to_string(Mask m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int e : elements(m)) {
    if (!first) os << ",";
    first = false;
    os << e;
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------- Partition

Partition::Partition(Mask ground, std::vector<Mask> blocks) : ground_(ground), blocks_(std::move(blocks)) {
  Mask seen = 0;
  for (Mask b : blocks_) {
    if (b == 0) fail(Errc::NotAPartition, "empty block");
    if (b & seen) fail(Errc::NotAPartition, "blocks overlap");
    seen |= b;
  }
  if (seen != ground_) fail(Errc::NotAPartition, "blocks do not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
}

Partition Partition::finest(Mask ground) {
  std::vector<Mask> b;
  for (int e : elements(ground)) b.push_back(Mask{1} << e);
  return Partition(ground, std::move(b));
}

Partition Partition::coarsest(Mask ground) {
  if (ground == 0) return Partition(0, {});
  return Partition(ground, {ground});
}

bool Partition::is_finest() const { return static_cast<int>(blocks_.size()) == popcount(ground_); }

Mask Partition::block_of(int element) const {
  for (Mask b : blocks_)
    if (b & (Mask{1} << element)) return b;
  fail(Errc::IndexOutOfRange, "element " + std::to_string(element) + " not in ground set");
}

Partition Partition::restricted(Mask sub) const {
  std::vector<Mask> b;
  for (Mask x : blocks_)
    if (x & sub) b.push_back(x & sub);
  return Partition(ground_ & sub, std::move(b));
}

std::vector<std::vector<int>> Partition::as_lists() const {
  std::vector<std::vector<int>> out;
  for (Mask b : blocks_) out.push_back(elements(b));
  return out;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < blocks_.size(); ++i) os << (i ? "," : "") << mask_to_string(blocks_[i]);
  os << "}";
  return os.str();
}

bool Partition::operator<(const Partition& o) const {
  if (ground_ != o.ground_) return ground_ < o.ground_;
  return as_lists() < o.as_lists();
}

// ---------------------------------------------------------------- enumeration

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) fail(Errc::CapExceeded, "Bell number index " + std::to_string(n));
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

std::vector<Partition> enumerate_partitions_of(Mask ground) {
  std::vector<int> elems = elements(ground);
  std::vector<Partition> out;
  std::vector<Mask> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == elems.size()) {
      out.emplace_back(ground, blocks);
      return;
    }
    Mask bit = Mask{1} << elems[i];
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      blocks[j] |= bit;
      rec(i + 1);
      blocks[j] &= ~bit;
    }
    blocks.push_back(bit);
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
  if (n < 1) fail(Errc::CapExceeded, "n must be at least 1");
  if (n > cap || n > kHardCap) fail(Errc::CapExceeded, "n = " + std::to_string(n) + " exceeds cap");
  return enumerate_partitions_of(ground_mask(n));
}

bool refines(const Partition& p, const Partition& q) {
  if (p.ground() != q.ground()) fail(Errc::GroundSetMismatch, "refines: different ground sets");
  for (Mask b : p.blocks()) {
    bool inside = false;
    for (Mask c : q.blocks())
      if ((b & c) == b) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

LatticeBounds lattice_bounds(const Partition& p, const Partition& q) {
  if (p.ground() != q.ground()) fail(Errc::GroundSetMismatch, "lattice_bounds: different ground sets");
  std::vector<Mask> meet;
  for (Mask a : p.blocks())
    for (Mask b : q.blocks())
      if (a & b) meet.push_back(a & b);
  // Join: merge overlapping blocks until stable.
  std::vector<Mask> join = p.blocks();
  for (Mask b : q.blocks()) join.push_back(b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < join.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < join.size(); ++j)
        if (join[i] & join[j]) {
          join[i] |= join[j];
          join.erase(join.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
  }
  return {Partition(p.ground(), join), Partition(p.ground(), meet)};
}

std::vector<Partition> coarsenings(const Partition& p) {
  const auto& b = p.blocks();
  int k = static_cast<int>(b.size());
  std::vector<Partition> out;
  if (k <= 1) return out;
  for (const auto& idx : enumerate_partitions_of(ground_mask(k))) {
    if (idx.is_finest()) continue;
    std::vector<Mask> merged;
    for (Mask group : idx.blocks()) {
      Mask m = 0;
      for (int i : elements(group)) m |= b[i - 1];
      merged.push_back(m);
    }
    out.emplace_back(p.ground(), std::move(merged));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- forests

EGForest::EGForest(std::vector<Partition> chain) : chain_(std::move(chain)) {
  if (chain_.empty()) fail(Errc::NotInForest, "empty chain");
  if (!chain_.front().is_finest()) fail(Errc::NotInForest, "chain does not start with the finest partition");
  for (std::size_t i = 1; i < chain_.size(); ++i)
    if (chain_[i] == chain_[i - 1] || !refines(chain_[i - 1], chain_[i]))
      fail(Errc::NotInForest, "chain is not strictly increasing in refinement");
}

bool EGForest::maximal() const {
  if (!full()) return false;
  for (std::size_t i = 1; i < chain_.size(); ++i)
    if (chain_[i - 1].size() != chain_[i].size() + 1) return false;
  return true;
}

bool EGForest::contains(const Partition& p) const {
  return std::find(chain_.begin(), chain_.end(), p) != chain_.end();
}

std::vector<Mask> EGForest::block_union() const {
  std::vector<Mask> u;
  for (const auto& p : chain_)
    for (Mask b : p.blocks()) u.push_back(b);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::string EGForest::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < chain_.size(); ++i) s += (i ? " < " : "") + chain_[i].to_string();
  return s + "]";
}

bool EGForest::operator<(const EGForest& o) const {
  return std::lexicographical_compare(chain_.begin(), chain_.end(), o.chain_.begin(), o.chain_.end());
}

std::vector<EGForest> enumerate_eg_forests_of(Mask ground, int cap) {
  int n = popcount(ground);
  if (n < 1 || n > cap) fail(Errc::CapExceeded, "forest enumeration for n = " + std::to_string(n));
  std::vector<EGForest> out;
  std::vector<Partition> chain{Partition::finest(ground)};
  std::function<void()> rec = [&]() {
    out.emplace_back(chain);
    for (auto& q : coarsenings(chain.back())) {
      chain.push_back(std::move(q));
      rec();
      chain.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EGForest> enumerate_eg_forests(int n, int cap) {
  if (n < 1) fail(Errc::CapExceeded, "n must be at least 1");
  return enumerate_eg_forests_of(ground_mask(std::min(n, kHardCap)), cap);
}

std::vector<EGForest> decompose_normal_forest(const EGForest& f) {
  if (f.full()) fail(Errc::NotNormal, "forest contains the coarsest partition");
  std::vector<EGForest> out;
  for (Mask block : f.coarsest().blocks()) {
    std::vector<Partition> sub;
    for (const auto& p : f.chain()) {
      Partition r = p.restricted(block);
      if (sub.empty() || sub.back() != r) sub.push_back(std::move(r));
    }
    out.emplace_back(std::move(sub));
  }
  return out;
}

std::vector<EGForest> interleave(const std::vector<EGForest>& fs) {
  Mask all = 0;
  for (const auto& f : fs) {
    if (f.ground() & all) fail(Errc::OverlappingGroundSets, "interleave: ground sets overlap");
    if (!f.full()) fail(Errc::NotNormal, "interleave expects full forests");
    all |= f.ground();
  }
  std::vector<EGForest> out;
  if (fs.empty()) return out;
  const std::size_t k = fs.size();
  std::vector<std::size_t> pos(k, 0);
  auto combined = [&]() {
    std::vector<Mask> blocks;
    for (std::size_t i = 0; i < k; ++i)
      for (Mask b : fs[i].chain()[pos[i]].blocks()) blocks.push_back(b);
    return Partition(all, std::move(blocks));
  };
  std::vector<Partition> chain{combined()};
  std::function<void()> rec = [&]() {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < k; ++i)
      if (pos[i] + 1 < fs[i].chain().size()) open.push_back(i);
    if (open.empty()) {
      out.emplace_back(chain);
      return;
    }
    for (Mask sel = 1; sel < (Mask{1} << open.size()); ++sel) {
      for (std::size_t j = 0; j < open.size(); ++j)
        if (sel & (Mask{1} << j)) ++pos[open[j]];
      chain.push_back(combined());
      rec();
      chain.pop_back();
      for (std::size_t j = 0; j < open.size(); ++j)
        if (sel & (Mask{1} << j)) --pos[open[j]];
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

int chain_position(const EGForest& f, const Partition& p) {
  if (!f.contains(p)) fail(Errc::NotInForest, "partition " + p.to_string() + " not in forest");
  int count = 0;
  for (const auto& q : f.chain())
    if (refines(p, q)) ++count;
  return count;
}

}  // namespace egren::partition
