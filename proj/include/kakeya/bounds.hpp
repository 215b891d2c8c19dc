#pragma once

#include <string>
#include <vector>

#include "kakeya/rational.hpp"

namespace kakeya {

struct BoundRow {
    std::string id;
    bool is_upper;
    bool applicable;
    Rat value;            // exact; for approximate rows a rational rendering
    double approx_value;  // meaningful only when approx
    bool approx;
    bool strict;   // existence bound stated with strict <
    bool vacuous;  // upper >= q^n, or lower <= 0
};

struct BoundReport {
    uint64_t q;
    int n, r;
    std::vector<BoundRow> rows;
    /// Construction id -> actual set size; filled at desk scale only.
    std::vector<std::pair<std::string, Int>> construction_sizes;
    Int best_lower_ceiling;
    Int best_upper;
    std::string best_upper_id;
    bool universal_beats_product;  // universal-upper below product-upper
};

/// (q^(r+1) / (q^r + q - 1))^n.
Rat lower_bound(uint64_t q, int n, int r);

/// (1 - n(q-1)q^-r) q^n; nonpositive values are the vacuous regime.
Rat linear_lower(uint64_t q, int n, int r);

Rat delta_q(uint64_t q);  // re-exported from constructions

/// All bound rows for one parameter triple. with_constructions additionally
/// builds and measures the constructions when q^n <= 6561.
BoundReport bound_report(uint64_t q, int n, int r, bool with_constructions = true);

std::vector<BoundReport> atlas(const std::vector<uint64_t>& qs, int n_max, int r_max,
                               bool with_constructions = true);

/// CSV, one line per (q, n, r, bound_id); schema header `bounds-atlas v1`.
std::string atlas_csv(const std::vector<BoundReport>& reports);

/// JSON rendering with the same schema version.
std::string atlas_json(const std::vector<BoundReport>& reports);

/// Exact rational string: integers plain, otherwise `num/den`.
std::string rat_string(const Rat& x);

}  // namespace kakeya
