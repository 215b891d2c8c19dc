#include "kakeya/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

ConstructionResult make_result(PointSet set, int rank, std::string id, Int predicted,
                               bool exact, Rat bound, bool strict, bool approx) {
    return ConstructionResult{std::move(set), rank,   std::move(id), std::move(predicted),
                              exact,          bound,  strict,        approx,
                              0,              Rat(0)};
}

// Rational lower approximation of sqrt(q), within 1e-6.
Rat sqrt_lower(uint64_t q) {
    Int scaled = boost::multiprecision::sqrt(Int(q) * Int(1000000000000LL));
    return Rat(scaled, 1000000);
}

}  // namespace

FunctionTable builtin_function(const Field& f, const std::string& id) {
    uint64_t q = f.q();
    FunctionTable t;
    t.f.resize(q);
    for (Elem x = 0; x < q; ++x) {
        if (id == "x^2") {
            t.f[x] = f.mul(x, x);
        } else if (id == "x^3") {
            t.f[x] = f.pow(x, 3);
        } else if (id == "x^(q-2)+x^2") {
            // 0 maps to 0 (x^(q-2) read as the inverse on nonzero elements).
            t.f[x] = x == 0 ? 0 : f.add(f.pow(x, q - 2), f.mul(x, x));
        } else if (id == "x^6+x^2") {
            t.f[x] = f.add(f.pow(x, 6), f.mul(x, x));
        } else {
            throw BadParameter("unknown function id: " + id);
        }
    }
    return t;
}

ConstructionResult missing_digit(const Field& f, int n) {
    if (n < 1) throw BadParameter("n must be at least 1");
    uint64_t q = f.q();
    PointSet k(f, n);
    for (uint64_t idx = 0; idx < k.universe(); ++idx) {
        uint64_t rest = idx;
        bool all_nonzero = true, all_binary = true;
        for (int i = 0; i < n; ++i) {
            Elem d = rest % q;
            rest /= q;
            if (d == 0) all_nonzero = false;
            if (d > 1) all_binary = false;
        }
        if (all_nonzero || all_binary) k.insert(idx);
    }
    Int predicted = ipow(Int(q) - 1, n) + ipow(Int(2), n) - 1;
    return make_result(std::move(k), 1, "missing-digit", predicted, true, Rat(predicted),
                       false, false);
}

std::vector<Elem> if_set(const Field& f, const FunctionTable& tab, Elem t) {
    std::set<Elem> vals;
    for (Elem x = 0; x < f.q(); ++x) vals.insert(f.add(tab.f[x], f.mul(t, x)));
    return std::vector<Elem>(vals.begin(), vals.end());
}

PointSet if_proof_set(const Field& f, const FunctionTable& tab, int n) {
    uint64_t q = f.q();
    PointSet k(f, n);
    for (Elem t = 0; t < q; ++t) {
        std::vector<Elem> image = if_set(f, tab, t);
        for (int j = 0; j <= n - 1; ++j) {
            // Points (x_1, ..., x_j, t, 0, ..., 0) with x_i in I_f(t).
            std::vector<size_t> pick(j, 0);
            for (;;) {
                uint64_t idx = 0, place = 1;
                for (int i = 0; i < j; ++i) {
                    idx += image[pick[i]] * place;
                    place *= q;
                }
                idx += t * place;
                k.insert(idx);
                int pos = 0;
                while (pos < j) {
                    if (++pick[pos] < image.size()) break;
                    pick[pos] = 0;
                    ++pos;
                }
                if (pos == j) break;
            }
        }
    }
    return k;
}

ConstructionResult if_construction(const Field& f, const FunctionTable& tab, int n) {
    if (n < 1) throw BadParameter("n must be at least 1");
    uint64_t q = f.q();
    Int predicted = 0;
    for (Elem t = 0; t < q; ++t) {
        Int s = if_set(f, tab, t).size();
        if (s == 1) throw LinearFunction("some value set I_f(t) is a single point");
        predicted += (ipow(s, n) - 1) / (s - 1);
    }
    PointSet k = if_proof_set(f, tab, n);
    if (predicted > Int(k.universe()))
        throw TooLarge("closed-form size exceeds the universe");
    // Pad with the smallest unused indices up to the closed form; extra
    // points never hurt the Kakeya property.
    for (uint64_t idx = 0; Int(k.card()) < predicted; ++idx)
        if (!k.test(idx)) k.insert(idx);
    return make_result(std::move(k), 1, "if-construction", predicted, true, Rat(predicted),
                       false, false);
}

ConstructionResult quadratic_rank1(const Field& f, int n) {
    uint64_t q = f.q();
    if (q == 2) throw UnsupportedField("q=2 has no quadratic construction");
    Rat bound;
    bool approx = false;
    std::string fn;
    if (q % 2 == 1) {
        fn = "x^2";
        bound = Rat(2) * (1 + Rat(1, q - 1)) * rat_pow(Rat(q + 1, 2), n);
    } else if (f.m() % 2 == 0) {
        fn = "x^3";
        bound = Rat(3, 2) * (1 + Rat(1, q - 1)) * rat_pow(Rat(2 * q + 1, 3), n);
    } else {
        fn = "x^(q-2)+x^2";
        bound = Rat(3, 2) * rat_pow(Rat(2) * (Rat(q) + sqrt_lower(q) + 1) / 3, n);
        approx = true;
    }
    ConstructionResult r = if_construction(f, builtin_function(f, fn), n);
    r.provenance = "quadratic";
    r.claimed_bound = bound;
    r.bound_strict = true;
    r.bound_approx = approx;
    return r;
}

ConstructionResult lift(const PointSet& k1, int n, int r, int r1) {
    if (!(n >= r && r >= r1 && r1 >= 1)) throw BadParameter("need n >= r >= r1 >= 1");
    const Field& f = k1.field();
    int n1 = n - (r - r1);
    if (k1.dim() != n1) throw DimensionMismatch("K1 must live in dimension n-(r-r1)");
    PointSet k(f, n);
    // Low coordinates come first in the index encoding, so the embedded
    // subspace is exactly the indices below q^n1.
    k1.for_each([&](uint64_t idx) { k.insert(idx); });
    for (uint64_t idx = k1.universe(); idx < k.universe(); ++idx) k.insert(idx);
    Int predicted = ipow(Int(f.q()), n) - ipow(Int(f.q()), n1) + Int(k1.card());
    return make_result(std::move(k), r, "lift", predicted, true, Rat(predicted), false,
                       false);
}

Rat delta_q(uint64_t q) {
    if (q == 3) return Rat(5, 3);
    if (q % 2 == 0) return Rat(1);
    return Rat(3);
}

namespace {

PointSet block_2d(const Field& f) {
    uint64_t q = f.q();
    if (q == 2) {
        PointSet k(f, 2);
        k.insert(0);
        k.insert(1);
        k.insert(2);  // everything except (1,1)
        return k;
    }
    if (q == 3) return missing_digit(f, 2).set;
    return if_proof_set(f, builtin_function(f, "x^2"), 2);
}

}  // namespace

ConstructionResult final_upper(const Field& f, int n, int r) {
    if (!(n >= r && r >= 1)) throw BadParameter("need n >= r >= 1");
    uint64_t q = f.q();
    int blocks = n / (r + 1);

    PointSet block = block_2d(f);
    if (r > 1) block = lift(block, r + 1, r, 1).set;

    PointSet k = PointSet::full(f, n - blocks * (r + 1));
    for (int i = 0; i < blocks; ++i) k = product(block, k);

    Int predicted = ipow(Int(block.card()), blocks) * ipow(Int(q), n - blocks * (r + 1));
    Rat bound = rat_pow(1 - (Rat(q) - delta_q(q)) / (2 * Rat(ipow(Int(q), r))), blocks) *
                Rat(ipow(Int(q), n));
    return make_result(std::move(k), r, "final-upper", predicted, true, bound, false,
                       false);
}

ConstructionResult universal_set(const Field& f, int n, int k) {
    uint64_t q = f.q();
    Int universe = ipow(Int(q), n);
    if (k < 1 || Int(k) > universe) throw BadK("k must satisfy 1 <= k <= q^n");
    int m = k > n ? 0 : n / k;
    PointSet u(f, n);
    for (uint64_t idx = 0; idx < u.universe(); ++idx) {
        uint64_t rest = idx;
        std::vector<Elem> digits(n);
        for (int i = 0; i < n; ++i) {
            digits[i] = rest % q;
            rest /= q;
        }
        bool hit = m == 0;
        for (int b = 0; b < k && !hit; ++b) {
            bool zero = true;
            for (int i = b * m; i < (b + 1) * m; ++i)
                if (digits[i] != 0) zero = false;
            hit = zero;
        }
        if (hit) u.insert(idx);
    }
    Int predicted = universe - ipow(ipow(Int(q), m) - 1, k) * ipow(Int(q), n - k * m);
    return make_result(std::move(u), 0, "universal", predicted, true, Rat(predicted),
                       false, false);
}

ConstructionResult kakeya_from_universal(const Field& f, int n, int r) {
    if (!(r >= 1 && r <= n)) throw BadParameter("need 1 <= r <= n");
    Int k = ipow(Int(f.q()), r);
    if (k > Int(1) << 30) throw TooLarge("q^r too large for a universal set");
    ConstructionResult res = universal_set(f, n, static_cast<int>(uint64_t(k)));
    res.rank = r;
    res.provenance = "kakeya-universal";
    int m = static_cast<int>(Int(n) / k);
    res.refined_bound = Rat(ipow(Int(f.q()), n - m + r));
    return res;
}

ConstructionResult random_rotation_rank1(const Field& f, int n, uint64_t seed,
                                         int max_attempts) {
    uint64_t q = f.q();
    if (q < 3) throw BadParameter("random rotation needs q >= 3");
    if (n < 1) throw BadParameter("n must be at least 1");

    double delta = 2.0 * std::sqrt(std::log(double(q)));
    double a_threshold = 2.0 * n / q - 2.0 * delta * std::sqrt(double(n) / q);

    PointSet k0(f, n);
    for (uint64_t idx = 0; idx < k0.universe(); ++idx) {
        uint64_t rest = idx;
        bool all_nonzero = true, all_binary = true;
        int nu1 = 0;
        for (int i = 0; i < n; ++i) {
            Elem d = rest % q;
            rest /= q;
            if (d == 0) all_nonzero = false;
            if (d > 1) all_binary = false;
            if (d == 1) ++nu1;
        }
        if (all_binary || (all_nonzero && nu1 > a_threshold)) k0.insert(idx);
    }

    std::vector<Vec> dirs = enum_directions(f, n);
    std::vector<Subspace> lines;
    lines.reserve(dirs.size());
    for (const Vec& d : dirs) lines.push_back(canonicalize(f, n, {d.c}));

    SplitMix64 rng(seed);
    double best_coverage = 0.0;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        PointSet k(f, n);
        for (int j = 0; j < n; ++j) {
            PointSet img = apply_map(random_invertible(f, n, rng), k0);
            img.for_each([&](uint64_t idx) { k.insert(idx); });
        }
        size_t covered = 0;
        for (const Subspace& l : lines)
            if (contains_translate(k, l)) ++covered;
        double coverage = double(covered) / double(lines.size());
        best_coverage = std::max(best_coverage, coverage);
        if (covered == lines.size()) {
            ConstructionResult res =
                make_result(std::move(k), 1, "random-rotation", Int(0), false,
                            Rat(ipow(Int(q), n)), false, false);
            res.predicted_size = res.set.card();
            res.size_is_exact = true;
            res.attempts = attempt;
            return res;
        }
    }
    throw AttemptsExhausted("no attempt covered every direction", best_coverage);
}

double popular_direction_fraction(const Field& f, int n, uint64_t samples, uint64_t seed) {
    uint64_t q = f.q();
    double delta = 2.0 * std::sqrt(std::log(double(q)));
    double threshold = double(n) / q - delta * std::sqrt(double(n) / q);
    SplitMix64 rng(seed);
    std::vector<int> counts(q);
    uint64_t popular = 0;
    for (uint64_t s = 0; s < samples; ++s) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) ++counts[rng.below(q)];
        bool ok = true;
        for (uint64_t e = 0; e < q; ++e)
            if (!(counts[e] > threshold)) ok = false;
        if (ok) ++popular;
    }
    return double(popular) / double(samples);
}

ConstructionResult product_with_full(const ConstructionResult& base, int s) {
    if (s < 0) throw BadParameter("extra dimensions must be nonnegative");
    const Field& f = base.set.field();
    ConstructionResult res = base;
    res.set = product(base.set, PointSet::full(f, s));
    Int scale = ipow(Int(f.q()), s);
    res.predicted_size = base.predicted_size * scale;
    res.claimed_bound = base.claimed_bound * Rat(scale);
    res.refined_bound = base.refined_bound * Rat(scale);
    res.provenance = "product";
    return res;
}

}  // namespace kakeya
