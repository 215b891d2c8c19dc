#include "kakeya/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

std::vector<Subspace> all_subspaces(const Field& f, int n, int r) {
    std::vector<Subspace> out;
    SubspaceEnumerator en(f, n, r);
    while (auto s = en.next()) out.push_back(std::move(*s));
    return out;
}

}  // namespace

VerificationReport is_kakeya(const PointSet& k, int r, int threads) {
    const Field& f = k.field();
    int n = k.dim();
    if (gaussian_binomial(f.q(), n, r) > 1000000)
        throw TooLarge("too many subspaces; use sampled mode");
    if (k.universe() > (uint64_t(1) << 30))
        throw TooLarge("universe too large; use sampled mode");

    std::vector<Subspace> subs = all_subspaces(f, n, r);
    std::vector<std::optional<Vec>> found(subs.size());

    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) found[i] = contains_translate(k, subs[i]);
    };
    if (threads <= 1 || subs.size() < 64) {
        work(0, subs.size());
    } else {
        size_t nt = std::min<size_t>(threads, subs.size());
        std::vector<std::thread> pool;
        size_t chunk = (subs.size() + nt - 1) / nt;
        for (size_t t = 0; t < nt; ++t)
            pool.emplace_back(work, t * chunk, std::min(subs.size(), (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    VerificationReport rep;
    rep.mode = VerifyMode::Exhaustive;
    rep.subspaces_checked = subs.size();
    for (size_t i = 0; i < subs.size(); ++i) {
        if (!found[i]) {
            rep.failure_found = true;
            rep.first_failure = subs[i];
            return rep;
        }
    }
    rep.verified = true;
    for (size_t i = 0; i < subs.size(); ++i)
        rep.witnesses.emplace_back(subs[i], *found[i]);
    return rep;
}

VerificationReport is_kakeya_sampled(const PointSet& k, int r, uint64_t samples,
                                     uint64_t seed) {
    const Field& f = k.field();
    int n = k.dim();
    SplitMix64 rng(seed);
    VerificationReport rep;
    rep.mode = VerifyMode::Sampled;
    rep.sample_count = samples;
    rep.seed = seed;
    for (uint64_t s = 0; s < samples; ++s) {
        // Uniform subspace: uniform full-rank r x n matrix, canonicalized.
        Subspace sub;
        do {
            std::vector<std::vector<Elem>> rows(r, std::vector<Elem>(n));
            for (auto& row : rows)
                for (Elem& e : row) e = rng.below(f.q());
            sub = canonicalize(f, n, rows);
        } while (sub.r != r);
        ++rep.subspaces_checked;
        if (!contains_translate(k, sub)) {
            rep.failure_found = true;
            rep.first_failure = sub;
            return rep;
        }
    }
    return rep;
}

namespace {

bool subset_has_translate(const PointSet& u, const std::vector<uint64_t>& subset) {
    const Field& f = u.field();
    int n = u.dim();
    std::vector<Vec> pts;
    for (uint64_t idx : subset) pts.push_back(vec_from_index(f, n, idx));
    // Candidate translates place the first subset element onto a member.
    bool ok = false;
    u.for_each([&](uint64_t member) {
        if (ok) return;
        Vec m = vec_from_index(f, n, member);
        Vec v;
        v.c.resize(n);
        for (int i = 0; i < n; ++i) v.c[i] = f.sub(m.c[i], pts[0].c[i]);
        for (const Vec& p : pts) {
            Vec t;
            t.c.resize(n);
            for (int i = 0; i < n; ++i) t.c[i] = f.add(p.c[i], v.c[i]);
            if (!u.contains(t)) return;
        }
        ok = true;
    });
    return ok;
}

}  // namespace

UniversalReport is_universal(const PointSet& u, int k) {
    if (k < 1) throw BadK("k must be positive");
    uint64_t uni = u.universe();
    if (binomial(Int(uni), Int(k)) > 10000000)
        throw TooLarge("too many subsets; use sampled mode");

    UniversalReport rep;
    rep.mode = VerifyMode::Exhaustive;
    std::vector<uint64_t> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    if (uint64_t(k) > uni) throw BadK("k exceeds the universe");
    for (;;) {
        ++rep.subsets_checked;
        if (!subset_has_translate(u, subset)) {
            rep.failure_found = true;
            rep.first_failure = subset;
            return rep;
        }
        // Next k-combination in lexicographic order.
        int i = k - 1;
        while (i >= 0 && subset[i] == uni - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    rep.verified = true;
    return rep;
}

UniversalReport is_universal_sampled(const PointSet& u, int k, uint64_t samples,
                                     uint64_t seed) {
    if (k < 1 || uint64_t(k) > u.universe()) throw BadK("k out of range");
    SplitMix64 rng(seed);
    UniversalReport rep;
    rep.mode = VerifyMode::Sampled;
    rep.sample_count = samples;
    rep.seed = seed;
    for (uint64_t s = 0; s < samples; ++s) {
        std::set<uint64_t> pick;
        while (pick.size() < uint64_t(k)) pick.insert(rng.below(u.universe()));
        std::vector<uint64_t> subset(pick.begin(), pick.end());
        ++rep.subsets_checked;
        if (!subset_has_translate(u, subset)) {
            rep.failure_found = true;
            rep.first_failure = subset;
            return rep;
        }
    }
    return rep;
}

ClassProfile class_profile(const Field& f, const FunctionTable& tab, Elem t) {
    std::map<Elem, uint64_t> by_value;
    for (Elem x = 0; x < f.q(); ++x) ++by_value[f.add(tab.f[x], f.mul(t, x))];
    ClassProfile p;
    p.t = t;
    for (const auto& [v, c] : by_value) p.class_sizes.push_back(c);
    std::sort(p.class_sizes.begin(), p.class_sizes.end());
    p.num_classes = p.class_sizes.size();
    return p;
}

QoddAudit prop_qodd_audit(const Field& f) {
    uint64_t q = f.q();
    if (!(f.is_char2() && f.m() % 2 == 1 && (q == 8 || q == 32 || q == 128)))
        throw WrongFieldKind("audit requires q in {8, 32, 128}");

    FunctionTable tab = builtin_function(f, "x^(q-2)+x^2");
    QoddAudit a;
    a.if_sizes.resize(q);
    for (Elem t = 0; t < q; ++t) a.if_sizes[t] = if_set(f, tab, t).size();

    a.i0_exact = a.if_sizes[0] == (2 * q - 1) / 3;
    a.i1_ok = 3 * a.if_sizes[1] <= 2 * q + 2;

    // |I| <= 2(q + sqrt(q) + 1)/3 iff 3|I| - 2q - 2 <= 2 sqrt(q); squared
    // comparison keeps everything in integers.
    a.all_bounded = true;
    for (Elem t = 0; t < q; ++t) {
        int64_t lhs = int64_t(3 * a.if_sizes[t]) - int64_t(2 * q + 2);
        if (lhs > 0 && uint64_t(lhs) * uint64_t(lhs) > 4 * q) a.all_bounded = false;
    }

    // N >= q/2 - sqrt(q) - 5/2 iff 2N - q + 5 >= -2 sqrt(q).
    a.n_ok = true;
    for (Elem t = 2; t < q; ++t) {
        Elem sqrt_t = f.sqrt_char2(t);
        Elem excl = f.inv(sqrt_t);
        uint64_t N = 0;
        for (Elem x = 1; x < q; ++x) {
            if (x == t || x == excl) continue;
            Elem d = f.mul(x, f.mul(f.add(x, t), f.add(x, t)));
            if (f.trace(f.inv(d)) == 0) ++N;
        }
        int64_t lhs = int64_t(2 * N) + 5 - int64_t(q);
        if (lhs < 0 && uint64_t(-lhs) * uint64_t(-lhs) > 4 * q) a.n_ok = false;
    }

    a.pass = a.i0_exact && a.i1_ok && a.all_bounded && a.n_ok;
    return a;
}

namespace {

bool has_large_if(const Field& f, const FunctionTable& tab) {
    for (Elem t = 0; t < f.q(); ++t)
        if (2 * if_set(f, tab, t).size() > f.q()) return true;
    return false;
}

}  // namespace

LargeIfReport exists_large_if(const Field& f, uint64_t sample_limit, uint64_t seed) {
    uint64_t q = f.q();
    LargeIfReport rep;
    double total = std::pow(double(q), double(q));
    if (total <= 10000000.0) {
        rep.exhaustive = true;
        rep.functions_checked = 0;
        rep.all_pass = true;
        FunctionTable tab;
        tab.f.assign(q, 0);
        for (;;) {
            ++rep.functions_checked;
            if (!has_large_if(f, tab)) {
                rep.all_pass = false;
                rep.counterexample = tab;
                return rep;
            }
            uint64_t pos = 0;
            while (pos < q) {
                if (++tab.f[pos] < q) break;
                tab.f[pos] = 0;
                ++pos;
            }
            if (pos == q) break;
        }
        return rep;
    }
    if (sample_limit == 0) sample_limit = 100000;
    rep.exhaustive = false;
    rep.functions_checked = sample_limit;
    rep.all_pass = true;
    SplitMix64 rng(seed);
    FunctionTable tab;
    tab.f.resize(q);
    for (uint64_t s = 0; s < sample_limit; ++s) {
        for (Elem& v : tab.f) v = rng.below(q);
        if (!has_large_if(f, tab)) {
            rep.all_pass = false;
            rep.counterexample = tab;
            return rep;
        }
    }
    return rep;
}

namespace {

// Distinct translate bitmasks of each subspace over a universe of <= 64
// points, each sorted ascending.
std::vector<std::vector<uint64_t>> translate_masks(const Field& f, int n, int r) {
    std::vector<std::vector<uint64_t>> out;
    uint64_t uni = 1;
    for (int i = 0; i < n; ++i) uni *= f.q();
    SubspaceEnumerator en(f, n, r);
    while (auto s = en.next()) {
        std::vector<uint64_t> pts = s->points(f);
        std::set<uint64_t> masks;
        for (uint64_t v = 0; v < uni; ++v) {
            Vec vv = vec_from_index(f, n, v);
            uint64_t mask = 0;
            for (uint64_t p : pts) {
                Vec pv = vec_from_index(f, n, p);
                Vec t;
                t.c.resize(n);
                for (int i = 0; i < n; ++i) t.c[i] = f.add(pv.c[i], vv.c[i]);
                mask |= uint64_t(1) << vec_index(f, t);
            }
            masks.insert(mask);
        }
        out.emplace_back(masks.begin(), masks.end());
    }
    return out;
}

std::vector<uint64_t> mask_members(uint64_t mask) {
    std::vector<uint64_t> m;
    for (int i = 0; i < 64; ++i)
        if ((mask >> i) & 1) m.push_back(i);
    return m;
}

// True when `a` is a lexicographically smaller member sequence than `b`.
bool lex_smaller(uint64_t a, uint64_t b) {
    return mask_members(a) < mask_members(b);
}

struct BbState {
    const std::vector<std::vector<uint64_t>>* subs;
    uint64_t best_mask;
    int best_card;
    uint64_t nodes;
    uint64_t budget;
    Int lower_ceiling;
};

void bb_search(BbState& st, uint64_t chosen) {
    if (++st.nodes > st.budget)
        throw BudgetExhausted("search budget exhausted", st.lower_ceiling,
                              Int(st.best_card));
    int card = std::popcount(chosen);
    // First uncovered subspace; also the cheapest-completion lower bound.
    int uncovered = -1;
    int extra_lb = 0;
    for (size_t i = 0; i < st.subs->size(); ++i) {
        int cheapest = 64;
        bool covered = false;
        for (uint64_t t : (*st.subs)[i]) {
            int add = std::popcount(t & ~chosen);
            if (add == 0) {
                covered = true;
                break;
            }
            cheapest = std::min(cheapest, add);
        }
        if (!covered) {
            if (uncovered < 0) uncovered = int(i);
            extra_lb = std::max(extra_lb, cheapest);
        }
    }
    if (uncovered < 0) {
        if (card < st.best_card ||
            (card == st.best_card && lex_smaller(chosen, st.best_mask))) {
            st.best_card = card;
            st.best_mask = chosen;
        }
        return;
    }
    if (card + extra_lb > st.best_card) return;
    for (uint64_t t : (*st.subs)[uncovered]) {
        uint64_t next = chosen | t;
        if (std::popcount(next) > st.best_card) continue;
        bb_search(st, next);
    }
}

}  // namespace

MinKakeyaResult min_kakeya(const Field& f, int n, int r, uint64_t budget,
                           bool force_branch_and_bound) {
    uint64_t uni = 1;
    for (int i = 0; i < n; ++i) uni *= f.q();
    if (uni > 64) throw TooLarge("universe above 64 points");

    Rat lower = rat_pow(Rat(ipow(Int(f.q()), r + 1), ipow(Int(f.q()), r) + f.q() - 1), n);
    Int lower_ceiling = ceil_rat(lower);

    std::vector<std::vector<uint64_t>> subs = translate_masks(f, n, r);
    auto feasible = [&](uint64_t mask) {
        for (const auto& ts : subs) {
            bool ok = false;
            for (uint64_t t : ts)
                if ((t & ~mask) == 0) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    };

    uint64_t full = uni == 64 ? ~uint64_t(0) : (uint64_t(1) << uni) - 1;
    uint64_t best_mask = full;
    int best_card = int(uni);
    uint64_t nodes = 0;
    bool exhaustive = uni <= 16 && !force_branch_and_bound;

    if (exhaustive) {
        for (uint64_t mask = 0; mask <= full; ++mask) {
            ++nodes;
            int card = std::popcount(mask);
            if (card > best_card) continue;
            if (card == best_card && !lex_smaller(mask, best_mask)) continue;
            if (feasible(mask)) {
                best_card = card;
                best_mask = mask;
            }
        }
    } else {
        BbState st{&subs, full, int(uni), 0, budget, lower_ceiling};
        bb_search(st, 0);
        best_mask = st.best_mask;
        best_card = st.best_card;
        nodes = st.nodes;
    }

    PointSet opt(f, n);
    for (uint64_t i = 0; i < uni; ++i)
        if ((best_mask >> i) & 1) opt.insert(i);
    return MinKakeyaResult{Int(best_card), std::move(opt), lower_ceiling, nodes,
                           exhaustive};
}

}  // namespace kakeya
