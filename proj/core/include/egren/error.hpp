#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egren {

enum class Errc {
  TadpoleEdge,
  UnknownVertex,
  IndexOutOfRange,
  EmptyVertexSet,
  EmptyEdgeSet,
  VertexComplementEmpty,
  NotAPartition,
  DisconnectedSubgraph,
  DisconnectedGraph,
  CapExceeded,
  GroundSetMismatch,
  NotNormal,
  OverlappingGroundSets,
  NotInForest,
  TruncationUnderflow,
  PoleAtZero,
  UnsupportedArgument,
  RigidPole,
  ParseError,
  NotSeriesParallel,
  DisconnectedBlock,
  Overflow,
  NonFiniteResult,
  BranchCut,
  ParamDomain,
  GridTooCoarse,
  QuadratureFailure,
  DerivativeUnavailable,
  InsufficientSubtractionOrder,
  DegenerateMultidegree,
  NonGaussianUnsupported,
  CompNotSupported,
  ArityMismatch,
  MissingRule,
  ShapeMismatch,
  SchemaViolation,
};

std::string_view errc_name(Errc c);

// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace egren
