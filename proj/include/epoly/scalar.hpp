#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "rational.hpp"

namespace epoly {

// Global tolerance for the floating-point backend. All equal/zero decisions
// in that backend go through scalar_traits<double>, which reads this value.
inline double& float_eps() {
    static double eps = 1e-9;
    return eps;
}

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long n) { return double(n); }
    static double from_fraction(long long p, long long q) { return double(p) / double(q); }
    static double abs(double x) { return std::fabs(x); }
    static bool is_zero(double x) { return std::fabs(x) <= float_eps(); }
    static double to_double(double x) { return x; }
    static std::string str(double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static double parse(const std::string& s) { return std::stod(s); }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long n) { return Rational(n); }
    static Rational from_fraction(long long p, long long q) { return Rational(p, q); }
    static Rational abs(const Rational& x) { return x.abs(); }
    static bool is_zero(const Rational& x) { return x.sign() == 0; }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string str(const Rational& x) { return x.str(); }
    static Rational parse(const std::string& s) { return Rational::parse(s); }
};

} // namespace epoly
