#include "spreadlab/error.hpp"

namespace spreadlab {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::Overflow: return "Overflow";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ElementNotInGroup: return "ElementNotInGroup";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::FormMismatch: return "FormMismatch";
    case Errc::NotASimilarity: return "NotASimilarity";
    case Errc::DomainNotStable: return "DomainNotStable";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::OddCharacteristic: return "OddCharacteristic";
    case Errc::UnsupportedCase: return "UnsupportedCase";
    case Errc::NotNormalizing: return "NotNormalizing";
    case Errc::NotInUnderlyingSet: return "NotInUnderlyingSet";
    case Errc::IdentityInput: return "IdentityInput";
    case Errc::NotSelfNormalizing: return "NotSelfNormalizing";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NotLinear: return "NotLinear";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace spreadlab
