#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kakeya/polymethod.hpp"

using namespace kakeya;

namespace {

uint64_t binom_small(uint32_t a, uint32_t b) {
    if (b > a) return 0;
    uint64_t r = 1;
    for (uint32_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
}

MultiPoly random_poly(const Field& f, int n, uint32_t max_deg, int terms, SplitMix64& rng) {
    MultiPoly p(f, n);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(n);
        uint32_t left = max_deg;
        for (int k = 0; k < n; ++k) {
            e[k] = static_cast<uint32_t>(rng.below(left + 1));
            left -= e[k];
        }
        p.add_term(e, rng.below(f.q()));
    }
    return p;
}

// Structural oracle for the Hasse derivative: expand P(X + Y) in 2n
// variables (X first, then Y) by multiplying out (X_k + Y_k)^{e_k}, then
// collect the coefficient of X^i as a polynomial in Y. Shares nothing with
// the shift or derivative code paths beyond ring arithmetic.
MultiPoly hasse_oracle(const MultiPoly& p, const ExpVec& i) {
    const Field& f = p.field();
    int n = p.n_vars();
    MultiPoly expanded(f, 2 * n);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term(f, 2 * n);
        term.add_term(ExpVec(2 * n, 0), c);
        for (int k = 0; k < n; ++k) {
            MultiPoly lin(f, 2 * n);
            ExpVec ex(2 * n, 0), ey(2 * n, 0);
            ex[k] = 1;
            ey[n + k] = 1;
            lin.add_term(ex, 1);
            lin.add_term(ey, 1);
            for (uint32_t rep = 0; rep < e[k]; ++rep) term = term.times(lin);
        }
        expanded = expanded.plus(term);
    }
    MultiPoly out(f, n);
    for (const auto& [e, c] : expanded.terms()) {
        bool match = true;
        for (int k = 0; k < n; ++k)
            if (e[k] != i[k]) match = false;
        if (!match) continue;
        out.add_term(ExpVec(e.begin() + n, e.end()), c);
    }
    return out;
}

std::vector<ExpVec> all_orders(int n, uint32_t cap) {
    std::vector<ExpVec> out;
    ExpVec cur(n, 0);
    for (;;) {
        if (total_degree(cur) <= cap) out.push_back(cur);
        int pos = 0;
        while (pos < n) {
            if (++cur[pos] <= cap) break;
            cur[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return out;
}

}  // namespace

TEST_CASE("ring operations and evaluation") {
    Field f = Field::of_order(5);
    MultiPoly p(f, 2);
    p.add_term({2, 0}, 3);
    p.add_term({0, 1}, 1);
    p.add_term({0, 0}, 4);
    CHECK(p.degree() == 2);
    CHECK(p.eval({1, 2}) == f.add(f.add(3, 2), 4));  // 3 + 2 + 4 = 4 mod 5
    CHECK(p.to_string() == "4 + 1 * X2^1 + 3 * X1^2");

    // Cancelling terms vanish from storage.
    MultiPoly z(f, 2);
    z.add_term({1, 1}, 2);
    z.add_term({1, 1}, 3);
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z.to_string() == "0");

    MultiPoly q(f, 2);
    q.add_term({1, 0}, 2);
    SplitMix64 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<Elem> pt{rng.below(5), rng.below(5)};
        CHECK(p.plus(q).eval(pt) == f.add(p.eval(pt), q.eval(pt)));
        CHECK(p.times(q).eval(pt) == f.mul(p.eval(pt), q.eval(pt)));
        CHECK(p.scaled(3).eval(pt) == f.mul(3, p.eval(pt)));
    }
}

TEST_CASE("guards") {
    Field f = Field::of_order(2);
    CHECK_THROWS_AS(MultiPoly(f, 7), TooLarge);
    CHECK_THROWS_AS(MultiPoly(f, 0), TooLarge);
    MultiPoly p(f, 1);
    CHECK_THROWS_AS(p.add_term({65}, 1), TooLarge);
    CHECK_THROWS_AS(p.add_term({1, 1}, 1), DimensionMismatch);
    CHECK_NOTHROW(p.add_term({64}, 1));
}

TEST_CASE("shift agrees with pointwise evaluation") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL}) {
        Field f = Field::of_order(q);
        SplitMix64 rng(q + 13);
        for (int trial = 0; trial < 60; ++trial) {
            int n = 1 + static_cast<int>(rng.below(3));
            MultiPoly p = random_poly(f, n, 5, 6, rng);
            std::vector<Elem> a(n);
            for (int k = 0; k < n; ++k) a[k] = rng.below(q);
            MultiPoly s = p.shifted(a);
            std::vector<Elem> x(n), xa(n);
            // Full grid when small, random probes otherwise.
            for (int probe = 0; probe < 40; ++probe) {
                for (int k = 0; k < n; ++k) {
                    x[k] = rng.below(q);
                    xa[k] = f.add(x[k], a[k]);
                }
                CHECK(s.eval(x) == p.eval(xa));
            }
            // Shifting back is the identity.
            std::vector<Elem> na(n);
            for (int k = 0; k < n; ++k) na[k] = f.neg(a[k]);
            CHECK(s.shifted(na) == p);
        }
    }
}

TEST_CASE("hasse derivative matches the P(X+Y) expansion oracle") {
    for (uint64_t q : {2ULL, 3ULL, 5ULL}) {
        Field f = Field::of_order(q);
        SplitMix64 rng(100 + q);
        for (int trial = 0; trial < 25; ++trial) {
            int n = 1 + static_cast<int>(rng.below(3));
            MultiPoly p = random_poly(f, n, 4, 5, rng);
            for (const ExpVec& i : all_orders(n, 4)) {
                CAPTURE(q);
                CHECK(hasse_derivative(p, i) == hasse_oracle(p, i));
            }
        }
    }
}

TEST_CASE("taylor identity over the full grid") {
    // P(x + y) = sum_i P^(i)(y) x^i for every x, y.
    for (uint64_t q : {2ULL, 3ULL}) {
        Field f = Field::of_order(q);
        SplitMix64 rng(q * 31);
        MultiPoly p = random_poly(f, 2, 4, 6, rng);
        for (Elem x0 = 0; x0 < q; ++x0)
            for (Elem x1 = 0; x1 < q; ++x1)
                for (Elem y0 = 0; y0 < q; ++y0)
                    for (Elem y1 = 0; y1 < q; ++y1) {
                        Elem sum = 0;
                        for (const ExpVec& i : all_orders(2, 4)) {
                            Elem v = hasse_derivative(p, i).eval({y0, y1});
                            v = f.mul(v, f.mul(f.pow(x0, i[0]), f.pow(x1, i[1])));
                            sum = f.add(sum, v);
                        }
                        CHECK(sum == p.eval({f.add(x0, y0), f.add(x1, y1)}));
                    }
    }
}

TEST_CASE("derivative linearity and degree drop") {
    Field f = Field::of_order(3);
    SplitMix64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly p = random_poly(f, 2, 5, 5, rng);
        MultiPoly r = random_poly(f, 2, 5, 5, rng);
        Elem c = rng.below(3);
        for (const ExpVec& i : all_orders(2, 5)) {
            MultiPoly dp = hasse_derivative(p, i);
            CHECK(hasse_derivative(p.plus(r), i) == dp.plus(hasse_derivative(r, i)));
            CHECK(hasse_derivative(p.scaled(c), i) == dp.scaled(c));
            if (!dp.is_zero() && !p.is_zero())
                CHECK(dp.degree() <= p.degree() - static_cast<int>(total_degree(i)));
        }
    }
}

TEST_CASE("derivative composition") {
    // (P^(i))^(j) = binom(i + j, i) P^(i+j), componentwise binomials.
    Field f = Field::of_order(5);
    SplitMix64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly p = random_poly(f, 2, 5, 6, rng);
        for (const ExpVec& i : all_orders(2, 3)) {
            for (const ExpVec& j : all_orders(2, 3)) {
                ExpVec ij{i[0] + j[0], i[1] + j[1]};
                uint64_t b =
                    (binom_small(ij[0], i[0]) % 5) * (binom_small(ij[1], i[1]) % 5) % 5;
                CHECK(hasse_derivative(hasse_derivative(p, i), j) ==
                      hasse_derivative(p, ij).scaled(b));
            }
        }
    }
}

TEST_CASE("multiplicity routes agree and behave") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL}) {
        Field f = Field::of_order(q);
        SplitMix64 rng(q * 9 + 1);
        for (int trial = 0; trial < 30; ++trial) {
            MultiPoly p = random_poly(f, 2, 4, 5, rng);
            for (Elem a0 = 0; a0 < q; ++a0)
                for (Elem a1 = 0; a1 < q; ++a1) {
                    Vec a;
                    a.c = {a0, a1};
                    uint32_t mu = multiplicity(p, a);
                    CHECK(mu == multiplicity_by_derivatives(p, a));
                    if (p.is_zero()) {
                        CHECK(mu == kInfiniteMultiplicity);
                    } else {
                        CHECK((mu >= 1) == (p.eval({a0, a1}) == 0));
                        CHECK(mu <= static_cast<uint32_t>(p.degree()));
                    }
                }
        }
    }

    // Multiplicities add under products: the lowest homogeneous parts of the
    // shifted factors multiply without cancellation over a field.
    Field f = Field::of_order(3);
    SplitMix64 rng(500);
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly p = random_poly(f, 2, 3, 4, rng);
        MultiPoly r = random_poly(f, 2, 3, 4, rng);
        if (p.is_zero() || r.is_zero()) continue;
        Vec a;
        a.c = {rng.below(3), rng.below(3)};
        CHECK(multiplicity(p.times(r), a) == multiplicity(p, a) + multiplicity(r, a));
    }
}

TEST_CASE("restriction to a flat") {
    Field f = Field::of_order(4);
    SplitMix64 rng(60);
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly p = random_poly(f, 3, 4, 6, rng);
        Vec b;
        b.c = {rng.below(4), rng.below(4), rng.below(4)};
        std::vector<Vec> dirs(2);
        for (Vec& d : dirs) d.c = {rng.below(4), rng.below(4), rng.below(4)};
        MultiPoly g = restrict_to_flat(p, b, dirs);
        CHECK(g.n_vars() == 2);
        if (!p.is_zero() && !g.is_zero()) CHECK(g.degree() <= p.degree());
        for (Elem t0 = 0; t0 < 4; ++t0)
            for (Elem t1 = 0; t1 < 4; ++t1) {
                std::vector<Elem> pt(3);
                for (int k = 0; k < 3; ++k)
                    pt[k] = f.add(b.c[k],
                                  f.add(f.mul(t0, dirs[0].c[k]), f.mul(t1, dirs[1].c[k])));
                CHECK(g.eval({t0, t1}) == p.eval(pt));
            }
        // Multiplicity does not drop under restriction.
        Vec origin;
        origin.c = {0, 0};
        CHECK(multiplicity(g, origin) >= multiplicity(p, b));
    }
}

TEST_CASE("vanishing polynomial meets its contract") {
    for (uint64_t q : {2ULL, 3ULL, 5ULL}) {
        Field f = Field::of_order(q);
        SplitMix64 rng(q * 17);
        for (int trial = 0; trial < 10; ++trial) {
            int n = 2;
            std::vector<Vec> S;
            for (int s = 0; s < 3; ++s) {
                Vec v;
                v.c = {rng.below(q), rng.below(q)};
                if (std::find(S.begin(), S.end(), v) == S.end()) S.push_back(v);
            }
            for (uint32_t m : {1u, 2u}) {
                // Smallest k satisfying the dimension count.
                Int need = binomial(Int(m) + n - 1, Int(n)) * Int(S.size());
                uint32_t k = 0;
                while (!(binomial(Int(n) + k, Int(n)) > need)) ++k;
                MultiPoly p = vanishing_poly(f, n, S, m, k);
                CHECK(!p.is_zero());
                CHECK(p.degree() <= static_cast<int>(k));
                for (const Vec& s : S) CHECK(multiplicity(p, s) >= m);
                CHECK_THROWS_AS(vanishing_poly(f, n, S, m, k > 1 ? 0 : k - 1),
                                ConditionViolated);
            }
        }
    }
}

TEST_CASE("vanishing polynomial is deterministic") {
    Field f = Field::of_order(3);
    std::vector<Vec> S;
    for (uint64_t i : {0ULL, 4ULL, 7ULL}) S.push_back(vec_from_index(f, 2, i));
    MultiPoly a = vanishing_poly(f, 2, S, 2, 3);
    MultiPoly b = vanishing_poly(f, 2, S, 2, 3);
    CHECK(a == b);
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("schwartz-zippel audit") {
    Field f = Field::of_order(3);
    std::vector<Elem> S{0, 1, 2};

    // Univariate with distinct roots saturates the bound.
    MultiPoly p(f, 1);
    p.add_term({3}, 1);
    p.add_term({1}, 2);  // x^3 - x = x(x-1)(x-2) over GF(3)
    SzAudit a = sz_audit(p, S);
    CHECK(a.lhs == 3);
    CHECK(a.rhs == 3);
    CHECK(a.pass);

    MultiPoly lin(f, 1);
    lin.add_term({1}, 1);
    SzAudit b = sz_audit(lin, S);
    CHECK(b.lhs == 1);
    CHECK(b.rhs == 1);
    CHECK(b.pass);

    // Random polynomials never violate the bound.
    SplitMix64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly r = random_poly(f, 2, 4, 5, rng);
        if (r.is_zero()) continue;
        CHECK(sz_audit(r, S).pass);
    }

    MultiPoly z(f, 1);
    CHECK_THROWS_AS(sz_audit(z, S), ZeroPolynomial);
}

TEST_CASE("lower-bound witness audit") {
    Field f = Field::of_order(3);

    WitnessAudit full = lower_bound_witness_audit(PointSet::full(f, 2), 1, 1);
    CHECK(full.k == 8);
    CHECK(full.m == 5);
    CHECK(full.lhs == Int(15) * 9);
    CHECK(full.rhs == 45);
    CHECK(full.pass);

    // Smallest Kakeya set in the 3x3 plane, found by exhaustive search here.
    SubspaceEnumerator lines(f, 2, 1);
    std::vector<Subspace> L;
    while (auto s = lines.next()) L.push_back(*s);
    std::optional<PointSet> best;
    for (uint32_t mask = 0; mask < 512; ++mask) {
        PointSet K(f, 2);
        for (int i = 0; i < 9; ++i)
            if ((mask >> i) & 1) K.insert(i);
        bool ok = true;
        for (const Subspace& l : L)
            if (!contains_translate(K, l)) {
                ok = false;
                break;
            }
        if (ok && (!best || K.card() < best->card())) best = K;
    }
    REQUIRE(best.has_value());
    CHECK(best->card() == 7);
    WitnessAudit small = lower_bound_witness_audit(*best, 1, 1);
    CHECK(small.lhs == Int(15) * 7);
    CHECK(small.pass);

    // Larger N keeps the inequality for the full space.
    for (uint64_t N : {2ULL, 3ULL, 5ULL})
        CHECK(lower_bound_witness_audit(PointSet::full(f, 2), 1, N).pass);
}
