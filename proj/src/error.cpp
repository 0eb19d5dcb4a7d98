#include "cpig/error.hpp"

namespace cpig {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::NoDensity: return "NoDensity";
        case ErrorKind::InvalidKnots: return "InvalidKnots";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::Divergent: return "Divergent";
        case ErrorKind::MaxDepth: return "MaxDepth";
        case ErrorKind::UnboundedSupport: return "UnboundedSupport";
        case ErrorKind::RatioSingularity: return "RatioSingularity";
        case ErrorKind::NonMonotone: return "NonMonotone";
        case ErrorKind::UnsupportedModel: return "UnsupportedModel";
        case ErrorKind::InvalidWeights: return "InvalidWeights";
        case ErrorKind::Parse: return "ParseError";
    }
    return "Error";
}

}  // namespace cpig
