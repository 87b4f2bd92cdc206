#include "pottscurve/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <iomanip>
#include <limits>
#include <sstream>

namespace pottscurve {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision())
{
    if (digits < 16)
        throw InvalidInput("working precision must be at least 16 digits");
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned working_digits() { return Real::default_precision(); }

Real epsilon()
{
    return std::numeric_limits<Real>::epsilon();
}

Real pi() { return boost::math::constants::pi<Real>(); }

Real parse_real(const std::string& text)
{
    try {
        return Real(text);
    } catch (const std::exception&) {
        throw InvalidInput("not a real number: '" + text + "'");
    }
}

// Three guard digits make the string read back to the same binary value.
std::string to_decimal(const Real& x) { return to_decimal(x, x.precision() + 3); }

std::string to_decimal(const Real& x, unsigned digits)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(static_cast<int>(digits)) << std::scientific << x;
    return os.str();
}

Real cabs(const Complex& z) { return boost::multiprecision::hypot(z.real(), z.imag()); }

Complex csqrt(const Complex& z) { return std::sqrt(z); }

} // namespace pottscurve
