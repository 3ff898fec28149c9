#pragma once

// Minimal subtraction on partitions, the counterterm recursion, the
// Epstein-Glaser forest formula and prepared amplitudes, generic over an
// amplitude provider.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "egren/amplitude.hpp"
#include "egren/laurent.hpp"
#include "egren/partition.hpp"

namespace egren::renorm {

using laurent::Series;
using partition::Mask;
using partition::Partition;

class AmplitudeProvider {
 public:
  virtual ~AmplitudeProvider() = default;

  virtual Mask ground() const = 0;
  // Value of (full vertex part on p.ground()) / p.
  virtual Series quotient_value(const Partition& p) const = 0;
  // Blocks allowed in forests and counterterms.
  virtual bool admissible(Mask block) const = 0;
  virtual std::string describe() const = 0;
  // True when quotient_value depends on the block sizes only, so nested
  // families may be evaluated up to relabeling.
  virtual bool size_symmetric() const { return false; }

  // Unsubtracted value of the full vertex part on `block`.
  Series block_value(Mask block) const { return quotient_value(Partition::finest(block)); }
  int size() const { return partition::popcount(ground()); }
};

// Values depend on the number of blocks only: quotient_value(p) = f_{|p|}.
class ScalarToy : public AmplitudeProvider {
 public:
  // f[k-1] is f_k; f_1 must be the unit series.
  explicit ScalarToy(std::vector<Series> f);
  // f_1 = 1 and f_k = value for 2 <= k <= n.
  static ScalarToy uniform(int n, const Series& value);

  Mask ground() const override { return partition::ground_mask(static_cast<int>(f_.size())); }
  Series quotient_value(const Partition& p) const override;
  bool admissible(Mask) const override { return true; }
  std::string describe() const override;
  bool size_symmetric() const override { return true; }
  const std::vector<Series>& values() const { return f_; }

 private:
  std::vector<Series> f_;
};

// Series-parallel graph backend: blocks and quotients are reduced to closed
// forms and paired with exp(-t x^2) at t = 1, keeping log t as the symbol L.
class SPModel : public AmplitudeProvider {
 public:
  SPModel(amplitude::SPGraph g, int d, int order);
  static SPModel parse(const std::string& expr, int d, int order);

  Mask ground() const override { return g_.graph.vertex_mask(); }
  Series quotient_value(const Partition& p) const override;
  bool admissible(Mask block) const override;
  std::string describe() const override;

  const amplitude::SPGraph& sp_graph() const { return g_; }
  int dimension() const { return d_; }
  int order() const { return order_; }
  amplitude::ClosedFormAmplitude quotient_closed_form(const Partition& p) const;
  // Every quotient of an admissible subset by an admissible partition passes
  // amplitude::ir_convergent.  Poles of other models are partly infrared and
  // minimal subtraction of them need not be local.
  bool infrared_safe() const;
  // Every proper admissible subset of at least two vertices has divergence
  // degree at most 0.  A scalar counterterm stands for c * delta only, so
  // subgraphs needing derivative counterterms are not represented.
  bool logarithmic_subdivergences() const;

 private:
  amplitude::SPGraph g_;
  int d_;
  int order_;
  int inner_order_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Mask, std::vector<Mask>>, Series> cache_;
};

// R_1 = id, R_k = -pp for k > 1.
Series ms_block(const Series& a, int size);

// quotient_value(p) times the product of ms_block over the blocks of p.
Series apply_T(const AmplitudeProvider& provider, const Partition& p);

// Partitions of `ground` into admissible blocks.
std::vector<Partition> admissible_partitions(const AmplitudeProvider& provider, Mask ground);

// Z(S) for every admissible S (singletons carry the unit).
using CountertermTable = std::map<Mask, Series>;
CountertermTable bph_counterterms(const AmplitudeProvider& provider);

// Z_k for k = 1..n from the scalar values f_k alone.
std::vector<Series> scalar_counterterms(const std::vector<Series>& f);

// Sum over admissible partitions P of the ground set of quotient(P) * prod Z(I).
Series bph_assembly(const AmplitudeProvider& provider, const CountertermTable& z);

enum class ForestSemantics {
  DistinctUnions,  // every laminar family of blocks once
  EveryChain,      // every chain of partitions once
};

// Epstein-Glaser forests built from admissible partitions.
std::vector<partition::EGForest> admissible_forests(const AmplitudeProvider& provider);

// Value of the nested subtraction attached to a laminar family of blocks.
// Members of size one are ignored; the ground set, if present, gets the final R.
Series family_term(const AmplitudeProvider& provider, const std::vector<Mask>& family);

Series forest_formula(const AmplitudeProvider& provider, ForestSemantics semantics = ForestSemantics::DistinctUnions);

// Inclusion-exclusion over intersections of maximal laminar families.
Series maximal_forest_form(const AmplitudeProvider& provider);

// Sum over normal forests (no subtraction for the ground set).
Series prepared_amplitude(const AmplitudeProvider& provider);

// Same quantity from the counterterm table.
Series prepared_from_counterterms(const AmplitudeProvider& provider, const CountertermTable& z);

struct ForestCounts {
  std::size_t chains = 0;
  std::size_t distinct_unions = 0;
};
ForestCounts count_forests(const AmplitudeProvider& provider);

// Redundant projection check in the one-dimensional rendition.
struct ResidualPoint {
  double zeta = 0;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
};
struct RedundantProjectionReport {
  std::vector<ResidualPoint> points;
  double fitted_order = 0;
  double unsubtracted = 0;  // |<u_G^zeta, f>| at the smallest zeta
};

// u_G = |x|^(-aG - k zeta), u_gamma = |x|^(-a_gamma - k zeta / 2) with the same
// vertex set, u_{G-gamma} = u_G / u_gamma.  With `control` the inner local
// counterterm is paired against the unsubtracted test function through an
// extra external factor, which breaks the identity.
RedundantProjectionReport redundant_projection_check(const Rational& aG, const Rational& a_gamma, const Rational& k,
                                                     const std::vector<double>& zetas, bool control = false);

}  // namespace egren::renorm
