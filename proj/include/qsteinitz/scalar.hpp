#pragma once

#include <cmath>
#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace qst {

/// Exact arithmetic policy: arbitrary-precision rationals, closed under +,-,*,/.
/// Expression templates are off so arithmetic results deduce as Rational in
/// generic code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Global comparison tolerance for the floating-point policy. A single
/// configuration value (not per call) so that certificates are reproducible.
inline double& tolerance_ref() {
    static double tol = 1e-9;
    return tol;
}
inline double global_tolerance() { return tolerance_ref(); }
inline void set_global_tolerance(double t) { tolerance_ref() = t; }

template <typename T>
struct scalar_policy;

template <>
struct scalar_policy<double> {
    static constexpr bool exact = false;
    static double tolerance() { return global_tolerance(); }
    static double abs(double a) { return std::fabs(a); }
    static double to_double(double a) { return a; }
    static double from_double(double a) { return a; }
};

template <>
struct scalar_policy<Rational> {
    static constexpr bool exact = true;
    static Rational tolerance() { return Rational(0); }
    static Rational abs(const Rational& a) { return boost::multiprecision::abs(a); }
    static double to_double(const Rational& a) { return a.convert_to<double>(); }
    // doubles embed exactly into the rationals
    static Rational from_double(double a) { return Rational(a); }
};

template <typename T>
T scalar_abs(const T& a) { return scalar_policy<T>::abs(a); }

template <typename T>
double to_double(const T& a) { return scalar_policy<T>::to_double(a); }

template <typename T>
T from_double(double a) { return scalar_policy<T>::from_double(a); }

/// sqrt with double-precision rounding; for the exact policy the result is the
/// rational embedding of the double approximation. Exact code paths must
/// compare squared quantities instead.
template <typename T>
T approx_sqrt(const T& a) {
    return from_double<T>(std::sqrt(to_double(a)));
}

} // namespace qst
