#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kakeya/linalg.hpp"
#include "kakeya/rational.hpp"

namespace kakeya {

using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
    uint32_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

/// Sentinel multiplicity of the zero polynomial.
inline constexpr uint32_t kInfiniteMultiplicity = UINT32_MAX;

/// Sparse multivariate polynomial over a Field: exponent vector -> nonzero
/// coefficient. Guards: at most 6 variables, total degree at most 64.
class MultiPoly {
public:
    MultiPoly(const Field& f, int n_vars);

    const Field& field() const { return *field_; }
    int n_vars() const { return n_vars_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    const std::map<ExpVec, Elem>& terms() const { return terms_; }

    /// Adds c * X^e into the polynomial (coefficients combine in the field;
    /// zero results are dropped).
    void add_term(const ExpVec& e, Elem c);
    Elem coeff(const ExpVec& e) const;

    MultiPoly plus(const MultiPoly& o) const;
    MultiPoly times(const MultiPoly& o) const;
    MultiPoly scaled(Elem c) const;

    Elem eval(const std::vector<Elem>& point) const;

    /// P(X + a).
    MultiPoly shifted(const std::vector<Elem>& a) const;

    /// Homogeneous part P_H: the terms of maximal total degree.
    MultiPoly homogeneous_part() const;

    /// Graded-lex text form: `c * X1^a1 X2^a2 ...` joined by ` + `.
    std::string to_string() const;

    bool operator==(const MultiPoly& o) const {
        return n_vars_ == o.n_vars_ && terms_ == o.terms_;
    }

private:
    const Field* field_;
    int n_vars_;
    std::map<ExpVec, Elem> terms_;
};

/// Hasse derivative P^(i): the coefficient of X^i in P(X + Y), as a
/// polynomial in Y.
MultiPoly hasse_derivative(const MultiPoly& p, const ExpVec& i);

/// mu(P, a): least total degree of a nonzero term of P(X + a);
/// kInfiniteMultiplicity for the zero polynomial.
uint32_t multiplicity(const MultiPoly& p, const Vec& a);

/// Independent route: smallest order w such that some Hasse derivative of
/// order w is nonzero at a. Kept as a cross-check of multiplicity().
uint32_t multiplicity_by_derivatives(const MultiPoly& p, const Vec& a);

/// Substitution P(b + T_1 d_1 + ... + T_r d_r) as a polynomial in r variables.
MultiPoly restrict_to_flat(const MultiPoly& p, const Vec& b, const std::vector<Vec>& dirs);

/// Nonzero polynomial of degree <= k vanishing with multiplicity >= m at
/// every point of S; requires binom(m+n-1,n)|S| < binom(n+k,n).
MultiPoly vanishing_poly(const Field& f, int n_vars, const std::vector<Vec>& S,
                         uint32_t m, uint32_t k);

struct SzAudit {
    Int lhs;  // sum of multiplicities over S^n
    Int rhs;  // deg P * |S|^{n-1}
    bool pass;
};

/// Multiplicity Schwartz-Zippel audit over the grid S^n.
SzAudit sz_audit(const MultiPoly& p, const std::vector<Elem>& S);

struct WitnessAudit {
    Int k;    // Nq^{r+1} - 1
    Int m;    // (q^r + q - 1)N
    Int lhs;  // binom(m+n-1, n) * |K|
    Int rhs;  // binom(n+k, n)
    bool pass;
};

/// Checks the proof inequality binom(m+n-1,n)|K| >= binom(n+k,n) for the
/// canonical parameter choice at a given N, against a verified Kakeya set.
WitnessAudit lower_bound_witness_audit(const PointSet& K, int r, uint64_t N);

}  // namespace kakeya
