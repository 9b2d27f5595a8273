// Copyright 2026 The opalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opalg/error.hpp"

namespace opalg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorCode::NormalizationViolation: return "NormalizationViolation";
    case ErrorCode::EmptyMeasurement: return "EmptyMeasurement";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::MeasurementMismatch: return "MeasurementMismatch";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NonSeparatingCollision: return "NonSeparatingCollision";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::GridEmpty: return "GridEmpty";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::UnboundedSlice: return "UnboundedSlice";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotAnEffect: return "NotAnEffect";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NotTraceNonincreasing: return "NotTraceNonincreasing";
    case ErrorCode::ToleranceBreach: return "ToleranceBreach";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeOnCone: return "NegativeOnCone";
    case ErrorCode::ReconstructionNotPSD: return "ReconstructionNotPSD";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::StateNotInTheory: return "StateNotInTheory";
    case ErrorCode::MalformedLabeling: return "MalformedLabeling";
    case ErrorCode::UnsupportedCarrier: return "UnsupportedCarrier";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::StateEscapesSet: return "StateEscapesSet";
    case ErrorCode::NonSeparatingStates: return "NonSeparatingStates";
    case ErrorCode::InverseInvalid: return "InverseInvalid";
    case ErrorCode::NotAResolution: return "NotAResolution";
  }
  return "Unknown";
}

}  // namespace opalg
