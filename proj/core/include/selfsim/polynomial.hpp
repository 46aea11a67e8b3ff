#ifndef SELFSIM_POLYNOMIAL_HPP
#define SELFSIM_POLYNOMIAL_HPP

#include "selfsim/rational.hpp"

#include <limits>
#include <map>
#include <span>
#include <vector>

namespace selfsim {

/// Exponent vector over the variables X_0..X_m.
using MultiIndex = std::vector<unsigned>;

unsigned multi_index_total(const MultiIndex& a);

/// Sparse multivariate polynomial over Z with cached norms.
///
/// No zero coefficient is ever stored, so deg, l_inf and l_1 are always
/// consistent with the term map.  The degree of the zero polynomial is the
/// sentinel kZeroDegree, below every integer, which makes the zero polynomial
/// a member of every class P(l, n).
class IntPolynomial {
public:
    static constexpr long kZeroDegree = std::numeric_limits<long>::min();

    explicit IntPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    static IntPolynomial constant(std::size_t nvars, Int c);
    static IntPolynomial variable(std::size_t nvars, std::size_t j);
    static IntPolynomial monomial(MultiIndex a, Int c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Int>& terms() const { return terms_; }

    long degree() const { return degree_; }
    const Int& linf() const { return linf_; }
    const Int& l1() const { return l1_; }

    /// Membership in P(l, n): l_inf <= l and deg < n.
    bool in_class(const Int& l, long n) const {
        return linf_ <= l && (is_zero() || degree_ < n);
    }

    void add_term(const MultiIndex& a, const Int& c);

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial operator*(const IntPolynomial& o) const;

    bool operator==(const IntPolynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    std::string to_string() const;

private:
    void recompute_norms();

    std::size_t nvars_;
    std::map<MultiIndex, Int> terms_;
    long degree_ = kZeroDegree;
    Int linf_{0};
    Int l1_{0};
};

IntPolynomial poly_product(std::span<const IntPolynomial> ps);

/// Cofactor-expansion determinant; division-free, for the small matrices of
/// coefficient polynomials that arise from candidate sets.
IntPolynomial poly_determinant(const std::vector<std::vector<IntPolynomial>>& m);

}  // namespace selfsim

#endif
