#include "egren/zforest.hpp"

#include <algorithm>
#include <functional>

#include "egren/error.hpp"

namespace egren::zforest {

namespace {

graph::Graph induced(const graph::Graph& g, Mask block) {
  return graph::full_vertex_part(g, partition::elements(block)).as_graph();
}

}  // namespace

std::vector<partition::Partition> connected_partitions(const graph::Graph& g, int cap) {
  int n = static_cast<int>(g.num_vertices());
  if (n > cap) fail(Errc::CapExceeded, "connected_partitions for " + std::to_string(n) + " vertices");
  Mask ground = g.vertex_mask();
  std::vector<partition::Partition> out;
  if (ground == 0) return out;
  for (auto& p : partition::enumerate_partitions_of(ground)) {
    bool ok = true;
    for (Mask b : p.blocks())
      if (partition::popcount(b) > 1 && !graph::is_connected(induced(g, b))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

bool non_overlapping(Mask a, Mask b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

bool ZForest::contains(Mask m) const { return std::binary_search(members.begin(), members.end(), m); }

std::vector<Mask> forest_candidates(const graph::Graph& g, bool restricted, int d) {
  std::vector<int> vs = g.vertices();
  std::sort(vs.begin(), vs.end());
  std::size_t n = vs.size();
  std::vector<Mask> out;
  for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (bits & (std::size_t{1} << i)) sub.push_back(vs[i]);
    Mask m = partition::mask_of(sub);
    if (restricted) {
      graph::Graph h = induced(g, m);
      if (!graph::is_connected(h) || graph::divergence_degree(h, d, 0).degree < 0) continue;
    }
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ZForest> zimmermann_forests(const graph::Graph& g, bool restricted, int d, int cap) {
  int n = static_cast<int>(g.num_vertices());
  if (n > cap) fail(Errc::CapExceeded, "zimmermann_forests for " + std::to_string(n) + " vertices");
  std::vector<Mask> cand = forest_candidates(g, restricted, d);
  std::vector<ZForest> out;
  std::vector<Mask> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cand.size()) {
      out.push_back({chosen, restricted});
      return;
    }
    rec(i + 1);
    for (Mask c : chosen)
      if (!non_overlapping(c, cand[i])) return;
    chosen.push_back(cand[i]);
    rec(i + 1);
    chosen.pop_back();
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const ZForest& a, const ZForest& b) { return a.members < b.members; });
  return out;
}

bool is_maximal(const ZForest& u, const std::vector<Mask>& candidates) {
  for (Mask c : candidates) {
    if (u.contains(c)) continue;
    bool fits = std::all_of(u.members.begin(), u.members.end(), [&](Mask m) { return non_overlapping(m, c); });
    if (fits) return false;
  }
  return true;
}

Mask parent_in(const ZForest& u, Mask m, Mask ground) {
  Mask best = ground;
  for (Mask x : u.members)
    if (x != m && (x & m) == m && partition::popcount(x) < partition::popcount(best)) best = x;
  return best;
}

bool relative_complement_closed(const ZForest& u, Mask ground) {
  for (Mask g : u.members) {
    if (g == ground) continue;
    if (!u.contains(parent_in(u, g, ground) & ~g)) return false;
  }
  return true;
}

bool top_level_complement_closed(const ZForest& u, Mask ground) {
  for (Mask g : u.members) {
    if (g == ground || parent_in(u, g, ground) != ground) continue;
    if (!u.contains(ground & ~g)) return false;
  }
  return true;
}

ZForest forest_of_chain(const partition::EGForest& f) { return {f.block_union(), false}; }

}  // namespace egren::zforest
