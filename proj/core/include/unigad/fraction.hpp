#pragma once

#include <string>

namespace unigad {

/// Non-negative ratio stored as an explicit (numerator, denominator) pair.
///
/// Quotients of edge energy over signal energy are compared by
/// cross-multiplication so that zero-energy denominators never force a
/// division. A pair with den == 0 and num > 0 compares as +infinity; the
/// degenerate 0/0 pair compares as 0.
struct Fraction {
    double num = 0.0;
    double den = 0.0;

    Fraction() = default;
    Fraction(double n, double d);

    /// num/den following the comparison conventions (0/0 -> 0, x/0 -> inf).
    double value() const;

    bool is_infinite() const { return den == 0.0 && num > 0.0; }

    std::string str() const;
};

/// Three-way comparison: negative if a < b, 0 if equal, positive if a > b.
int compare(const Fraction& a, const Fraction& b);

inline bool operator<(const Fraction& a, const Fraction& b) { return compare(a, b) < 0; }
inline bool operator>(const Fraction& a, const Fraction& b) { return compare(a, b) > 0; }
inline bool operator<=(const Fraction& a, const Fraction& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Fraction& a, const Fraction& b) { return compare(a, b) >= 0; }
inline bool operator==(const Fraction& a, const Fraction& b) { return compare(a, b) == 0; }
inline bool operator!=(const Fraction& a, const Fraction& b) { return compare(a, b) != 0; }

}  // namespace unigad
