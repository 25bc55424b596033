#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

namespace freenc {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

// Shortest round-trippable text for a double ("1", "-0.5", "1e-300").
std::string format_real(double x);
// "a", "a+bi", "a-bi" or "bi"; parsed back by parse_complex.
std::string format_complex(Complex z);
std::string format_rational(const Rational& q);

inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline bool is_zero(const Rational& q) { return q == 0; }

inline Complex conj_coeff(const Complex& z) { return std::conj(z); }
inline Rational conj_coeff(const Rational& q) { return q; }

}  // namespace freenc
