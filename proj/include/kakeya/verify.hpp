#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kakeya/constructions.hpp"
#include "kakeya/linalg.hpp"
#include "kakeya/rational.hpp"

namespace kakeya {

/// Search gave up; carries the proven interval for the minimum.
struct BudgetExhausted : std::runtime_error {
    Int lower_ceiling;
    Int best_found;
    BudgetExhausted(const std::string& msg, Int lower, Int best)
        : std::runtime_error(msg), lower_ceiling(std::move(lower)),
          best_found(std::move(best)) {}
};

enum class VerifyMode { Exhaustive, Sampled };

struct VerificationReport {
    bool verified = false;       // true only in exhaustive mode
    bool failure_found = false;  // sampled mode reports this instead
    std::optional<Subspace> first_failure;
    /// Witness translate per subspace, in enumeration order (exhaustive,
    /// verified runs only).
    std::vector<std::pair<Subspace, Vec>> witnesses;
    uint64_t subspaces_checked = 0;
    VerifyMode mode = VerifyMode::Exhaustive;
    uint64_t sample_count = 0;
    uint64_t seed = 0;
};

/// Exhaustive rank-r Kakeya check over every subspace. Throws TooLarge when
/// the subspace count exceeds 10^6 or the universe exceeds 2^30.
VerificationReport is_kakeya(const PointSet& k, int r, int threads = 1);

/// Seeded uniform subspace sample; never claims full verification.
VerificationReport is_kakeya_sampled(const PointSet& k, int r, uint64_t samples,
                                     uint64_t seed);

struct UniversalReport {
    bool verified = false;
    bool failure_found = false;
    std::optional<std::vector<uint64_t>> first_failure;  // offending k-subset
    uint64_t subsets_checked = 0;
    VerifyMode mode = VerifyMode::Exhaustive;
    uint64_t sample_count = 0;
    uint64_t seed = 0;
};

/// Exhaustive k-universality check over all k-element subsets. Throws
/// TooLarge when binom(q^n, k) exceeds 10^7.
UniversalReport is_universal(const PointSet& u, int k);
UniversalReport is_universal_sampled(const PointSet& u, int k, uint64_t samples,
                                     uint64_t seed);

struct ClassProfile {
    Elem t;
    std::vector<uint64_t> class_sizes;  // ascending; sums to q
    uint64_t num_classes;
};

/// Partition of F_q under x ~ y iff f(x) + tx = f(y) + ty.
ClassProfile class_profile(const Field& f, const FunctionTable& tab, Elem t);

struct QoddAudit {
    std::vector<uint64_t> if_sizes;  // |I_f(t)| indexed by t
    bool i0_exact;                   // |I_f(0)| = (2q-1)/3
    bool i1_ok;                      // |I_f(1)| <= (2q+2)/3
    bool all_bounded;                // |I_f(t)| <= 2(q+sqrt(q)+1)/3 for all t
    bool n_ok;                       // N >= q/2 - sqrt(q) - 5/2 for t not in {0,1}
    bool pass;
};

/// Audits f(x) = x^(q-2) + x^2 over q in {8, 32, 128}; square-root
/// comparisons are done exactly on squared integers.
QoddAudit prop_qodd_audit(const Field& f);

struct LargeIfReport {
    bool exhaustive;
    uint64_t functions_checked;
    bool all_pass;  // each function admits t with |I_f(t)| > q/2
    std::optional<FunctionTable> counterexample;
};

/// Checks every function table when q^q <= 10^7, otherwise a seeded sample.
LargeIfReport exists_large_if(const Field& f, uint64_t sample_limit = 0,
                              uint64_t seed = 0);

struct MinKakeyaResult {
    Int minimum;
    PointSet optimal;  // lexicographically smallest optimal set
    Int lower_ceiling;
    uint64_t nodes;
    bool exhaustive;
};

/// Exact smallest rank-r Kakeya set: full subset scan for universes up to
/// 16 points, branch and bound (universe up to 64) within the node budget.
/// force_branch_and_bound skips the subset scan on small universes.
MinKakeyaResult min_kakeya(const Field& f, int n, int r, uint64_t budget = 50000000,
                           bool force_branch_and_bound = false);

}  // namespace kakeya
