#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

enum class Errc {
    NonPrime,
    ReduciblePolynomial,
    NotASubfield,
    Overflow,
    DegreeMismatch,
    ElementNotInGroup,
    BudgetExceeded,
    FormMismatch,
    NotASimilarity,
    DomainNotStable,
    EvenCharacteristic,
    OddCharacteristic,
    UnsupportedCase,
    NotNormalizing,
    NotInUnderlyingSet,
    IdentityInput,
    NotSelfNormalizing,
    HypothesisViolated,
    NotLinear,
    SearchExhausted,
    ParseError,
    ValidationFailed,
    InvalidArgument,
    Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace spreadlab
