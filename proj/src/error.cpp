#include "stripgain/error.hpp"

namespace stripgain {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::PoleProximity: return "PoleProximity";
        case ErrorKind::PoleInStrip: return "PoleInStrip";
        case ErrorKind::PoleOnLine: return "PoleOnLine";
        case ErrorKind::SingularSylvester: return "SingularSylvester";
        case ErrorKind::ImproperTransferFunction: return "ImproperTransferFunction";
        case ErrorKind::EigenvalueInStrip: return "EigenvalueInStrip";
        case ErrorKind::WindowTooShort: return "WindowTooShort";
        case ErrorKind::DivergentIntegral: return "DivergentIntegral";
        case ErrorKind::NotPDominant: return "NotPDominant";
        case ErrorKind::NotPDominantAtSlope: return "NotPDominantAtSlope";
        case ErrorKind::MarginalRate: return "MarginalRate";
        case ErrorKind::IllPosed: return "IllPosed";
        case ErrorKind::NoCommonROC: return "NoCommonROC";
        case ErrorKind::PoleInROC: return "PoleInROC";
    }
    return "Unknown";
}

}  // namespace stripgain
