#include "unigad/fraction.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace unigad {

Fraction::Fraction(double n, double d) : num(n), den(d) {
    if (!(n >= 0.0) || !(d >= 0.0)) {
        throw std::invalid_argument("Fraction requires non-negative numerator and denominator");
    }
}

double Fraction::value() const {
    if (den == 0.0) {
        return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return num / den;
}

std::string Fraction::str() const {
    std::ostringstream os;
    os << num << "/" << den;
    return os.str();
}

int compare(const Fraction& a, const Fraction& b) {
    const bool a_inf = a.is_infinite();
    const bool b_inf = b.is_infinite();
    if (a_inf && b_inf) return 0;
    if (a_inf) return 1;
    if (b_inf) return -1;
    // Treat 0/0 as 0/1 so the cross product below is well defined.
    const double an = a.num, ad = (a.den == 0.0) ? 1.0 : a.den;
    const double bn = b.num, bd = (b.den == 0.0) ? 1.0 : b.den;
    const double lhs = an * bd;
    const double rhs = bn * ad;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

}  // namespace unigad
