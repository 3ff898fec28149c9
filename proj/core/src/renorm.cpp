#include "egren/renorm.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>

#include "egren/error.hpp"
#include "egren/graph.hpp"

namespace egren::renorm {

using partition::EGForest;

// ---------------------------------------------------------------- providers

ScalarToy::ScalarToy(std::vector<Series> f) : f_(std::move(f)) {
  if (f_.empty()) fail(Errc::ParamDomain, "ScalarToy needs at least f_1");
  if (static_cast<int>(f_.size()) > partition::kDefaultCap) fail(Errc::CapExceeded, "ScalarToy size");
  if (!(f_[0] == Series::one()) || f_[0].truncation() < 0)
    fail(Errc::ParamDomain, "f_1 must be the unit series");
}

ScalarToy ScalarToy::uniform(int n, const Series& value) {
  std::vector<Series> f{Series::one()};
  for (int k = 2; k <= n; ++k) f.push_back(value);
  return ScalarToy(std::move(f));
}

Series ScalarToy::quotient_value(const Partition& p) const {
  std::size_t k = p.size();
  if (k == 0 || k > f_.size()) fail(Errc::IndexOutOfRange, "no value for " + std::to_string(k) + " blocks");
  return f_[k - 1];
}

std::string ScalarToy::describe() const { return "ScalarToy(n=" + std::to_string(f_.size()) + ")"; }

SPModel::SPModel(amplitude::SPGraph g, int d, int order)
    : g_(std::move(g)), d_(d), order_(order), inner_order_(order + static_cast<int>(g_.graph.num_vertices())) {
  if (d < 2) fail(Errc::ParamDomain, "dimension must be at least 2");
  if (static_cast<int>(g_.graph.num_vertices()) > partition::kForestCap)
    fail(Errc::CapExceeded, "SP model with more than " + std::to_string(partition::kForestCap) + " vertices");
}

SPModel SPModel::parse(const std::string& expr, int d, int order) {
  return SPModel(amplitude::sp_parse(expr), d, order);
}

amplitude::ClosedFormAmplitude SPModel::quotient_closed_form(const Partition& p) const {
  amplitude::PieceGraph piece = amplitude::quotient_piece(g_, p);
  return amplitude::reduce_piece(piece.graph, piece.rho, piece.preferred, d_,
                                 "quotient of " + partition::mask_to_string(p.ground()) + " by " + p.to_string());
}

Series SPModel::quotient_value(const Partition& p) const {
  std::pair<Mask, std::vector<Mask>> key{p.ground(), p.blocks()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Series v;
  if (!amplitude::quotient_piece(g_, p).scaleless)
    v = amplitude::evaluate_pairing(quotient_closed_form(p), inner_order_).series;
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, v);
  return v;
}

bool SPModel::infrared_safe() const {
  Mask ground = g_.graph.vertex_mask();
  for (Mask s = ground; s != 0; s = (s - 1) & ground) {
    if (partition::popcount(s) == 1 || !admissible(s)) continue;
    for (const auto& p : admissible_partitions(*this, s))
      if (!amplitude::ir_convergent(amplitude::quotient_piece(g_, p), d_)) return false;
  }
  return true;
}

bool SPModel::logarithmic_subdivergences() const {
  Mask ground = g_.graph.vertex_mask();
  for (Mask s = (ground - 1) & ground; s != 0; s = (s - 1) & ground) {
    if (partition::popcount(s) == 1 || !admissible(s)) continue;
    graph::Subgraph sub = graph::full_vertex_part(g_.graph, partition::elements(s));
    if (graph::divergence_degree(sub, d_, 0).degree > 0) return false;
  }
  return true;
}

bool SPModel::admissible(Mask block) const {
  if (partition::popcount(block) == 1) return true;
  return graph::is_connected(graph::full_vertex_part(g_.graph, partition::elements(block)).as_graph());
}

std::string SPModel::describe() const { return "SPModel(" + g_.expr.to_string() + ", d=" + std::to_string(d_) + ")"; }

// ---------------------------------------------------------------- operators

Series ms_block(const Series& a, int size) {
  if (size <= 1) return a;
  return -a.pp();
}

Series apply_T(const AmplitudeProvider& provider, const Partition& p) {
  Series out = provider.quotient_value(p);
  for (Mask b : p.blocks()) {
    int k = partition::popcount(b);
    if (k > 1) out *= ms_block(provider.block_value(b), k);
  }
  return out;
}

std::vector<Partition> admissible_partitions(const AmplitudeProvider& provider, Mask ground) {
  std::vector<Partition> out;
  for (auto& p : partition::enumerate_partitions_of(ground)) {
    bool ok = std::all_of(p.blocks().begin(), p.blocks().end(), [&](Mask b) { return provider.admissible(b); });
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

CountertermTable bph_counterterms(const AmplitudeProvider& provider) {
  Mask ground = provider.ground();
  std::vector<Mask> subsets;
  for (Mask s = ground;; s = (s - 1) & ground) {
    if (s != 0 && provider.admissible(s)) subsets.push_back(s);
    if (s == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    int pa = partition::popcount(a), pb = partition::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  CountertermTable z;
  for (Mask s : subsets) {
    if (partition::popcount(s) == 1) {
      z[s] = Series::one();
      continue;
    }
    Series sum;
    for (const auto& p : admissible_partitions(provider, s)) {
      if (p.is_coarsest()) continue;
      Series term = provider.quotient_value(p);
      for (Mask b : p.blocks())
        if (partition::popcount(b) > 1) term *= z.at(b);
      sum += term;
    }
    z[s] = -sum.pp();
  }
  return z;
}

std::vector<Series> scalar_counterterms(const std::vector<Series>& f) {
  std::vector<Series> z{Series::one()};
  for (int n = 2; n <= static_cast<int>(f.size()); ++n) {
    Series sum;
    for (const auto& p : partition::enumerate_partitions(n)) {
      if (p.is_coarsest()) continue;
      Series term = f[p.size() - 1];
      for (Mask b : p.blocks()) term *= z[static_cast<std::size_t>(partition::popcount(b)) - 1];
      sum += term;
    }
    z.push_back(-sum.pp());
  }
  return z;
}

Series bph_assembly(const AmplitudeProvider& provider, const CountertermTable& z) {
  Series sum;
  for (const auto& p : admissible_partitions(provider, provider.ground())) {
    Series term = provider.quotient_value(p);
    for (Mask b : p.blocks())
      if (partition::popcount(b) > 1) term *= z.at(b);
    sum += term;
  }
  return sum;
}

Series prepared_from_counterterms(const AmplitudeProvider& provider, const CountertermTable& z) {
  Series sum;
  for (const auto& p : admissible_partitions(provider, provider.ground())) {
    if (p.is_coarsest()) continue;
    Series term = provider.quotient_value(p);
    for (Mask b : p.blocks())
      if (partition::popcount(b) > 1) term *= z.at(b);
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------- forests

std::vector<EGForest> admissible_forests(const AmplitudeProvider& provider) {
  Mask ground = provider.ground();
  int n = partition::popcount(ground);
  if (n < 1 || n > partition::kForestCap) fail(Errc::CapExceeded, "forest enumeration for n = " + std::to_string(n));
  std::vector<EGForest> out;
  std::vector<Partition> chain{Partition::finest(ground)};
  std::function<void()> rec = [&]() {
    out.emplace_back(chain);
    for (auto& q : partition::coarsenings(chain.back())) {
      bool ok = std::all_of(q.blocks().begin(), q.blocks().end(), [&](Mask b) { return provider.admissible(b); });
      if (!ok) continue;
      chain.push_back(std::move(q));
      rec();
      chain.pop_back();
    }
  };
  rec();
  return out;
}

namespace {

std::vector<Mask> nontrivial_union(const EGForest& f) {
  std::vector<Mask> u;
  for (Mask b : f.block_union())
    if (partition::popcount(b) > 1) u.push_back(b);
  return u;
}

// Memoized evaluation of nested subtractions for one provider.
class FamilyEvaluator {
 public:
  explicit FamilyEvaluator(const AmplitudeProvider& p) : p_(p) {}

  Series term(const std::vector<Mask>& family) {
    auto [full, fam] = normalize(family);
    Series v = inner(p_.ground(), fam);
    return full ? ms_block(v, p_.size()) : v;
  }

  // Sum of count * term(family).  Size-symmetric providers evaluate each
  // shape once.
  Series sum(const std::map<std::vector<Mask>, long>& families) {
    std::map<std::vector<Mask>, long> grouped;
    std::map<std::string, std::pair<std::vector<Mask>, long>> by_shape;
    for (const auto& [family, count] : families) {
      if (!p_.size_symmetric()) {
        grouped[family] += count;
        continue;
      }
      auto [full, fam] = normalize(family);
      auto [it, fresh] = by_shape.try_emplace((full ? "F" : "") + shape(p_.ground(), fam), family, 0);
      it->second.second += count;
    }
    for (const auto& [key, entry] : by_shape) grouped[entry.first] += entry.second;
    std::erase_if(grouped, [](const auto& e) { return e.second == 0; });
    Series total;
    for (const auto& [family, count] : grouped) {
      Series t = term(family);
      total += count == 1 ? t : t.scaled(laurent::Coeff(Rational(count)));
    }
    return total;
  }

 private:
  // Nontrivial members, sorted, with the ground set split off.
  std::pair<bool, std::vector<Mask>> normalize(const std::vector<Mask>& family) const {
    Mask ground = p_.ground();
    std::vector<Mask> fam;
    for (Mask m : family)
      if (partition::popcount(m) > 1) fam.push_back(m);
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    bool full = std::binary_search(fam.begin(), fam.end(), ground);
    if (full) fam.erase(std::find(fam.begin(), fam.end(), ground));
    return {full, fam};
  }

  // quotient(S / children) times R of each non-trivial child, where `below`
  // are the family members strictly inside S.
  Series inner(Mask s, const std::vector<Mask>& below) {
    std::vector<Mask> key{s};
    key.insert(key.end(), below.begin(), below.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<Mask> children;
    for (Mask m : below) {
      bool maximal = std::none_of(below.begin(), below.end(), [&](Mask o) { return o != m && (o & m) == m; });
      if (maximal) children.push_back(m);
    }
    std::string shape_key;
    if (p_.size_symmetric()) {
      shape_key = shape(s, below);
      auto hit = shape_memo_.find(shape_key);
      if (hit != shape_memo_.end()) return memo_.emplace(std::move(key), hit->second).first->second;
    }
    Mask covered = 0;
    for (Mask c : children) covered |= c;
    std::vector<Mask> blocks = children;
    for (int e : partition::elements(s & ~covered)) blocks.push_back(Mask{1} << e);
    Series v = p_.quotient_value(Partition(s, blocks));
    for (Mask c : children) v *= ms_block(inner(c, sub_family(c, below)), partition::popcount(c));
    if (!shape_key.empty()) shape_memo_.emplace(shape_key, v);
    memo_.emplace(std::move(key), v);
    return v;
  }

  static std::vector<Mask> sub_family(Mask c, const std::vector<Mask>& below) {
    std::vector<Mask> sub;
    for (Mask m : below)
      if (m != c && (m & c) == m) sub.push_back(m);
    return sub;
  }

  // Rooted tree of the nested family with vertex counts, in canonical form.
  static std::string shape(Mask s, const std::vector<Mask>& below) {
    std::vector<std::string> parts;
    for (Mask m : below) {
      bool maximal = std::none_of(below.begin(), below.end(), [&](Mask o) { return o != m && (o & m) == m; });
      if (maximal) parts.push_back(shape(m, sub_family(m, below)));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = std::to_string(partition::popcount(s)) + "(";
    for (const auto& p : parts) out += p;
    return out + ")";
  }

  const AmplitudeProvider& p_;
  std::map<std::vector<Mask>, Series> memo_;
  std::map<std::string, Series> shape_memo_;
};

}  // namespace

Series family_term(const AmplitudeProvider& provider, const std::vector<Mask>& family) {
  FamilyEvaluator ev(provider);
  return ev.term(family);
}

ForestCounts count_forests(const AmplitudeProvider& provider) {
  auto forests = admissible_forests(provider);
  std::set<std::vector<Mask>> unions;
  for (const auto& f : forests) unions.insert(f.block_union());
  return {forests.size(), unions.size()};
}

Series forest_formula(const AmplitudeProvider& provider, ForestSemantics semantics) {
  FamilyEvaluator ev(provider);
  std::map<std::vector<Mask>, long> families;
  for (const auto& f : admissible_forests(provider)) {
    long& c = families[f.block_union()];
    c = semantics == ForestSemantics::EveryChain ? c + 1 : 1;
  }
  return ev.sum(families);
}

Series prepared_amplitude(const AmplitudeProvider& provider) {
  FamilyEvaluator ev(provider);
  std::map<std::vector<Mask>, long> families;
  for (const auto& f : admissible_forests(provider))
    if (!f.full() || provider.size() == 1) families[nontrivial_union(f)] = 1;
  return ev.sum(families);
}

Series maximal_forest_form(const AmplitudeProvider& provider) {
  Mask ground = provider.ground();
  int n = partition::popcount(ground);
  if (n > partition::kForestCap) fail(Errc::CapExceeded, "maximal forest form for n = " + std::to_string(n));
  // Candidate members: admissible proper subsets with at least two elements.
  std::vector<Mask> cand;
  for (Mask s = (ground - 1) & ground; s != 0; s = (s - 1) & ground)
    if (partition::popcount(s) > 1 && provider.admissible(s)) cand.push_back(s);
  std::sort(cand.begin(), cand.end());
  if (cand.size() > 64) fail(Errc::CapExceeded, "too many candidate blocks");
  using Bits = std::uint64_t;
  auto compatible = [&](std::size_t i, std::size_t j) {
    Mask a = cand[i], b = cand[j], c = a & b;
    return c == 0 || c == a || c == b;
  };
  // Maximal laminar families by extension search.
  std::vector<Bits> maximal;
  std::function<void(std::size_t, Bits)> rec = [&](std::size_t i, Bits chosen) {
    if (i == cand.size()) {
      for (std::size_t j = 0; j < cand.size(); ++j) {
        if (chosen >> j & 1u) continue;
        bool fits = true;
        for (std::size_t l = 0; l < cand.size() && fits; ++l)
          if ((chosen >> l & 1u) && !compatible(j, l)) fits = false;
        if (fits) return;
      }
      maximal.push_back(chosen);
      return;
    }
    bool fits = true;
    for (std::size_t l = 0; l < i && fits; ++l)
      if ((chosen >> l & 1u) && !compatible(i, l)) fits = false;
    if (fits) rec(i + 1, chosen | (Bits{1} << i));
    rec(i + 1, chosen);
  };
  rec(0, 0);

  // Intersection closure.
  std::set<Bits> closure(maximal.begin(), maximal.end());
  std::vector<Bits> work(maximal.begin(), maximal.end());
  while (!work.empty()) {
    Bits x = work.back();
    work.pop_back();
    for (Bits m : maximal) {
      Bits y = x & m;
      if (closure.insert(y).second) work.push_back(y);
    }
  }
  // Moebius coefficients, largest families first.
  std::vector<Bits> xs(closure.begin(), closure.end());
  std::sort(xs.begin(), xs.end(), [](Bits a, Bits b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::map<Bits, long> coef;
  for (Bits x : xs) {
    long c = 1;
    for (const auto& [y, cy] : coef)
      if (y != x && (y & x) == x) c -= cy;
    coef[x] = c;
  }
  // Collect the coefficient of every subfamily, then evaluate each once.
  std::map<Bits, long> weight;
  for (Bits x : xs) {
    long c = coef[x];
    if (c == 0) continue;
    for (Bits sub = x;; sub = (sub - 1) & x) {
      weight[sub] += c;
      if (sub == 0) break;
    }
  }
  std::map<std::vector<Mask>, long> families;
  for (const auto& [f, w] : weight) {
    if (w == 0) continue;
    std::vector<Mask> fam;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (f >> j & 1u) fam.push_back(cand[j]);
    families[fam] += w;
  }
  Series total = FamilyEvaluator(provider).sum(families);
  return n == 1 ? total : total.rp();
}

}  // namespace egren::renorm
