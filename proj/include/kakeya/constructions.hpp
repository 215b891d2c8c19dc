#pragma once

#include <string>
#include <vector>

#include "kakeya/linalg.hpp"
#include "kakeya/rational.hpp"

namespace kakeya {

/// Total map F_q -> F_q as a value table of length q.
struct FunctionTable {
    std::vector<Elem> f;
};

/// Named function tables used by the constructions: "x^2", "x^3",
/// "x^(q-2)+x^2" (with 0 mapped to 0), "x^6+x^2".
FunctionTable builtin_function(const Field& f, const std::string& id);

struct ConstructionResult {
    PointSet set;
    int rank;
    std::string provenance;  // stable construction id

    /// Closed-form size; equals set.card() when size_is_exact.
    Int predicted_size;
    bool size_is_exact;

    /// Size bound claimed for the construction. When bound_approx is set the
    /// stored value is a rational lower approximation of an irrational bound
    /// (so size < claimed_bound still implies the true strict inequality).
    Rat claimed_bound;
    bool bound_strict;  // claimed as strict `<` rather than `<=`
    bool bound_approx;

    uint64_t attempts = 0;  // random rotation retries
    Rat refined_bound = 0;  // kakeya-universal only: q^(n - floor(n/q^r) + r)
};

/// Union of the all-nonzero cube and the 0/1 cube; rank-1 Kakeya of size
/// exactly (q-1)^n + 2^n - 1.
ConstructionResult missing_digit(const Field& f, int n);

/// The value set I_f(t) = { f(x) + t x : x in F_q }, ascending.
std::vector<Elem> if_set(const Field& f, const FunctionTable& tab, Elem t);

/// The literal set { (x_1,...,x_j, t, 0,...,0) : 0 <= j <= n-1, t in F_q,
/// x_i in I_f(t) }; rank-1 Kakeya.
PointSet if_proof_set(const Field& f, const FunctionTable& tab, int n);

/// if_proof_set padded with the smallest unused indices up to the closed
/// form sum_t (|I_f(t)|^n - 1)/(|I_f(t)| - 1); padding keeps the Kakeya
/// property. Throws LinearFunction when some |I_f(t)| = 1.
ConstructionResult if_construction(const Field& f, const FunctionTable& tab, int n);

/// Rank-1 set with size strictly below the quadratic bound: f(x) = x^2 for
/// odd q, x^3 for q an even power of 2, x^(q-2) + x^2 for q an odd power of
/// 2 (q >= 8). Throws UnsupportedField for q = 2.
ConstructionResult quadratic_rank1(const Field& f, int n);

/// K1 (rank r1, dimension n - (r - r1), embedded on the low coordinates)
/// unioned with the complement of that subspace; rank r in dimension n.
ConstructionResult lift(const PointSet& k1, int n, int r, int r1);

/// floor(n/(r+1)) blocks of (r+1)-dimensional rank-r sets times a full
/// remainder space; size at most (1 - (q - delta_q)/(2 q^r))^blocks q^n.
ConstructionResult final_upper(const Field& f, int n, int r);

Rat delta_q(uint64_t q);

/// Points with at least one of k leading coordinate blocks (each of
/// dimension floor(n/k)) entirely zero; contains a translate of every
/// k-element subset. Size exactly (1 - (1 - q^-m)^k) q^n.
ConstructionResult universal_set(const Field& f, int n, int k);

/// universal_set at k = q^r, reinterpreted as a rank-r Kakeya set; also
/// reports the refined bound q^(n - floor(n/q^r) + r).
ConstructionResult kakeya_from_universal(const Field& f, int n, int r);

/// Union of random invertible images of K0 = B u A0 (the 0/1 cube plus the
/// popular part of the all-nonzero cube), retried until a line exists in
/// every direction. Throws AttemptsExhausted with the best coverage.
ConstructionResult random_rotation_rank1(const Field& f, int n, uint64_t seed,
                                         int max_attempts = 32);

/// Fraction of `samples` uniform vectors lying in the popular-direction set
/// D0 (every value count nu_eps above n/q - 2 sqrt(ln q) sqrt(n/q)).
double popular_direction_fraction(const Field& f, int n, uint64_t samples, uint64_t seed);

/// Product with a full space of s extra coordinates; preserves the rank.
ConstructionResult product_with_full(const ConstructionResult& base, int s);

}  // namespace kakeya
