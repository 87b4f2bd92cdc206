#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pottscurve {

// Working precision is the mpfr default precision at the time values are
// created. Callers set it once per run with PrecisionScope.
// Expression templates are disabled: they interact badly with std::complex
// and with auto-deduced temporaries.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Complex = std::complex<Real>;

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

unsigned working_digits();
Real epsilon();
Real pi();

Real parse_real(const std::string& text);
// Shortest round-trip is not needed here; the one-argument form prints every
// digit the value carries plus guard digits, so a reload at the same
// precision reproduces it exactly.
std::string to_decimal(const Real& x);
std::string to_decimal(const Real& x, unsigned digits);

inline Real abs2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
Real cabs(const Complex& z);
Complex csqrt(const Complex& z);

// Error taxonomy shared by all modules. Each carries enough context for a
// caller to decide whether to retry.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};

#define POTTSCURVE_ERROR(Name, Base)          \
    struct Name : Base {                      \
        using Base::Base;                     \
    }

POTTSCURVE_ERROR(InvalidCouplings, UsageError);
POTTSCURVE_ERROR(InvalidInput, UsageError);
POTTSCURVE_ERROR(OutOfDomain, UsageError);
POTTSCURVE_ERROR(DegenerateCovariance, UsageError);
POTTSCURVE_ERROR(DivisionByZero, NumericalError);
POTTSCURVE_ERROR(NotInvertible, NumericalError);
POTTSCURVE_ERROR(NonConvergence, NumericalError);
POTTSCURVE_ERROR(SingularJacobian, NumericalError);
POTTSCURVE_ERROR(SeedFailure, NumericalError);
POTTSCURVE_ERROR(NoPhysicalSolution, NumericalError);
POTTSCURVE_ERROR(ContinuationStall, NumericalError);
POTTSCURVE_ERROR(NonPhysicalSolution, NumericalError);
POTTSCURVE_ERROR(AmbiguousBranch, NumericalError);
POTTSCURVE_ERROR(SheetTrackingFailure, NumericalError);
POTTSCURVE_ERROR(MultipleSingularities, NumericalError);
POTTSCURVE_ERROR(InconsistentMerging, NumericalError);
POTTSCURVE_ERROR(UnstableFit, NumericalError);
POTTSCURVE_ERROR(TruncationTooShort, NumericalError);
POTTSCURVE_ERROR(BudgetExhausted, NumericalError);
POTTSCURVE_ERROR(OrderMismatch, NumericalError);

#undef POTTSCURVE_ERROR

} // namespace pottscurve
