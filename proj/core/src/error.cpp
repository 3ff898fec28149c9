#include "egren/error.hpp"

namespace egren {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::TadpoleEdge: return "TadpoleEdge";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptyVertexSet: return "EmptyVertexSet";
    case Errc::EmptyEdgeSet: return "EmptyEdgeSet";
    case Errc::VertexComplementEmpty: return "VertexComplementEmpty";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::DisconnectedSubgraph: return "DisconnectedSubgraph";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::GroundSetMismatch: return "GroundSetMismatch";
    case Errc::NotNormal: return "NotNormal";
    case Errc::OverlappingGroundSets: return "OverlappingGroundSets";
    case Errc::NotInForest: return "NotInForest";
    case Errc::TruncationUnderflow: return "TruncationUnderflow";
    case Errc::PoleAtZero: return "PoleAtZero";
    case Errc::UnsupportedArgument: return "UnsupportedArgument";
    case Errc::RigidPole: return "RigidPole";
    case Errc::ParseError: return "ParseError";
    case Errc::NotSeriesParallel: return "NotSeriesParallel";
    case Errc::DisconnectedBlock: return "DisconnectedBlock";
    case Errc::Overflow: return "Overflow";
    case Errc::NonFiniteResult: return "NonFiniteResult";
    case Errc::BranchCut: return "BranchCut";
    case Errc::ParamDomain: return "ParamDomain";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::DerivativeUnavailable: return "DerivativeUnavailable";
    case Errc::InsufficientSubtractionOrder: return "InsufficientSubtractionOrder";
    case Errc::DegenerateMultidegree: return "DegenerateMultidegree";
    case Errc::NonGaussianUnsupported: return "NonGaussianUnsupported";
    case Errc::CompNotSupported: return "CompNotSupported";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::MissingRule: return "MissingRule";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace egren
