#ifndef SELFSIM_ALGEBRAIC_HPP
#define SELFSIM_ALGEBRAIC_HPP

#include "selfsim/rational.hpp"

#include <optional>
#include <vector>

namespace selfsim {

/// Exact real algebraic number.
///
/// Rationals take a fast path.  Everything else carries its integer minimal
/// polynomial (primitive, positive leading coefficient, coefficients in
/// ascending degree order) together with a rational isolating interval that
/// brackets exactly one real root.  Values are immutable; interval refinement
/// produces fresh intervals on demand.
class AlgebraicScalar {
public:
    static AlgebraicScalar from_rational(Rat v);
    // minpoly given ascending; degree-1 inputs collapse to the rational root.
    // The polynomial must be irreducible over Q (not re-verified here) and
    // must change sign over [lo, hi].
    static AlgebraicScalar make(std::vector<Int> minpoly, Rat lo, Rat hi);

    bool is_rational() const { return rational_.has_value(); }
    const Rat& rational() const { return *rational_; }

    // Primitive integer minimal polynomial, ascending degree order.
    // For p/q this is (qX - p), stored {-p, q}.
    const std::vector<Int>& minpoly() const { return minpoly_; }
    unsigned degree() const { return static_cast<unsigned>(minpoly_.size()) - 1; }

    // Height per the max-coefficient convention.
    Int height() const;

    // Enclosure of width <= 2^-bits (a point for rationals).
    Interval enclosure(unsigned bits) const;

    bool operator==(const AlgebraicScalar& o) const;

private:
    AlgebraicScalar() = default;
    std::optional<Rat> rational_;
    std::vector<Int> minpoly_;
    Rat iso_lo_, iso_hi_;
    int sign_at_lo_ = 0;  // sign of minpoly at iso_lo_, cached for bisection
};

// Exact sign of an integer polynomial (ascending coefficients) at a rational.
int poly_sign_at(const std::vector<Int>& coeffs, const Rat& x);

}  // namespace selfsim

#endif
