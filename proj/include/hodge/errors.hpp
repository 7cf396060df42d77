#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

// Base of every error raised by the library. `kind()` is a stable identifier
// used by the CLI to pick an exit code and by tests to match error paths.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HODGE_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

// exact_ratfun
HODGE_DEFINE_ERROR(NotDivisible);
HODGE_DEFINE_ERROR(DivisionByZeroFunction);
HODGE_DEFINE_ERROR(NonUnitDenominator);
HODGE_DEFINE_ERROR(NonIntegralExpansion);
HODGE_DEFINE_ERROR(ZeroDenominatorAfterSubstitution);

// root_data
HODGE_DEFINE_ERROR(UnsupportedRank);
HODGE_DEFINE_ERROR(DefinitionMismatch);
HODGE_DEFINE_ERROR(SingularSystem);
HODGE_DEFINE_ERROR(ParseError);

// series_formulas
HODGE_DEFINE_ERROR(NonIntegralExponent);
HODGE_DEFINE_ERROR(NotGoodCase);
HODGE_DEFINE_ERROR(NotCoprime);
HODGE_DEFINE_ERROR(NotPolynomialWithinBound);
HODGE_DEFINE_ERROR(InvalidArgument);

// hn_recursion
HODGE_DEFINE_ERROR(NonIntegralCodim);

// vhs
HODGE_DEFINE_ERROR(NotSquare);
HODGE_DEFINE_ERROR(SingularImaginaryPart);

#undef HODGE_DEFINE_ERROR

}  // namespace hodge
