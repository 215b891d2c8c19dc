#include "kakeya/linalg.hpp"

#include <algorithm>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {
constexpr uint64_t kUniverseGuard = 1ULL << 34;
}

uint64_t vec_index(const Field& f, const Vec& v) {
    uint64_t idx = 0;
    for (size_t i = v.c.size(); i-- > 0;) idx = idx * f.q() + v.c[i];
    return idx;
}

Vec vec_from_index(const Field& f, int n, uint64_t index) {
    Vec v;
    v.c.resize(n);
    for (int i = 0; i < n; ++i) {
        v.c[i] = index % f.q();
        index /= f.q();
    }
    return v;
}

PointSet::PointSet(const Field& f, int n) : field_(&f), n_(n), card_(0) {
    if (n < 0) throw DimensionMismatch("negative dimension");
    uint64_t u = 1;
    for (int i = 0; i < n; ++i) {
        if (u > kUniverseGuard / f.q())
            throw TooLarge("universe q^n exceeds 2^34");
        u *= f.q();
    }
    universe_ = u;
    words_.assign((u + 63) / 64, 0);
}

void PointSet::insert(uint64_t index) {
    uint64_t& w = words_[index >> 6];
    uint64_t bit = 1ULL << (index & 63);
    if (!(w & bit)) {
        w |= bit;
        ++card_;
    }
}

void PointSet::erase(uint64_t index) {
    uint64_t& w = words_[index >> 6];
    uint64_t bit = 1ULL << (index & 63);
    if (w & bit) {
        w &= ~bit;
        --card_;
    }
}

std::vector<uint64_t> PointSet::members() const {
    std::vector<uint64_t> out;
    out.reserve(card_);
    for_each([&](uint64_t i) { out.push_back(i); });
    return out;
}

void PointSet::for_each(const std::function<void(uint64_t)>& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = words_[w];
        while (bits) {
            unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
            fn((static_cast<uint64_t>(w) << 6) | b);
            bits &= bits - 1;
        }
    }
}

PointSet PointSet::full(const Field& f, int n) {
    PointSet s(f, n);
    for (uint64_t i = 0; i < s.universe(); ++i) s.insert(i);
    return s;
}

std::vector<uint64_t> Subspace::points(const Field& f) const {
    uint64_t count = 1;
    for (int i = 0; i < r; ++i) count *= f.q();
    std::vector<uint64_t> out;
    out.reserve(count);
    std::vector<Elem> coeff(r, 0);
    for (uint64_t it = 0;; ++it) {
        Vec v;
        v.c.assign(n, 0);
        for (int i = 0; i < r; ++i) {
            if (coeff[i] == 0) continue;
            for (int j = 0; j < n; ++j)
                v.c[j] = f.add(v.c[j], f.mul(coeff[i], basis[i][j]));
        }
        out.push_back(vec_index(f, v));
        int pos = 0;
        while (pos < r) {
            if (++coeff[pos] < f.q()) break;
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == r) break;
        if (r == 0) break;
    }
    return out;
}

Subspace canonicalize(const Field& f, int n, std::vector<std::vector<Elem>> rows) {
    int rank = 0;
    std::vector<int> pivots;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int sel = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        Elem s = f.inv(rows[rank][col]);
        for (int j = 0; j < n; ++j) rows[rank][j] = f.mul(rows[rank][j], s);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Elem c = rows[i][col];
            for (int j = 0; j < n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[rank][j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    Subspace s;
    s.n = n;
    s.r = rank;
    s.basis.assign(rows.begin(), rows.begin() + rank);
    s.pivots = pivots;
    return s;
}

SubspaceEnumerator::SubspaceEnumerator(const Field& f, int n, int r, Int guard)
    : field_(&f), n_(n), r_(r) {
    if (r < 0 || r > n) throw DimensionMismatch("need 0 <= r <= n");
    total_ = gaussian_binomial(f.q(), n, r);
    if (total_ > guard) throw TooLarge("subspace count exceeds guard");
    pivots_.resize(r);
    for (int i = 0; i < r; ++i) pivots_[i] = i;
    load_pivots();
}

void SubspaceEnumerator::load_pivots() {
    free_pos_.clear();
    std::vector<bool> is_pivot(n_, false);
    for (int p : pivots_) is_pivot[p] = true;
    for (int i = 0; i < r_; ++i)
        for (int j = pivots_[i] + 1; j < n_; ++j)
            if (!is_pivot[j]) free_pos_.emplace_back(i, j);
    free_val_.assign(free_pos_.size(), 0);
    block_fresh_ = true;
}

std::optional<Subspace> SubspaceEnumerator::next() {
    if (pivots_done_) return std::nullopt;

    Subspace s;
    s.n = n_;
    s.r = r_;
    s.pivots = pivots_;
    s.basis.assign(r_, std::vector<Elem>(n_, 0));
    for (int i = 0; i < r_; ++i) s.basis[i][pivots_[i]] = 1;
    for (size_t k = 0; k < free_pos_.size(); ++k)
        s.basis[free_pos_[k].first][free_pos_[k].second] = free_val_[k];

    // Advance: free-entry counter first (last position fastest), then the
    // pivot combination in lexicographic order.
    size_t pos = free_val_.size();
    while (pos > 0) {
        --pos;
        if (++free_val_[pos] < field_->q()) return s;
        free_val_[pos] = 0;
    }
    // Next pivot combination.
    int i = r_ - 1;
    while (i >= 0 && pivots_[i] == n_ - (r_ - i)) --i;
    if (i < 0) {
        pivots_done_ = true;
        return s;
    }
    ++pivots_[i];
    for (int j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    load_pivots();
    return s;
}

std::vector<Vec> enum_directions(const Field& f, int n) {
    if (n < 1) throw DimensionMismatch("need n >= 1");
    std::vector<Vec> out;
    SubspaceEnumerator en(f, n, 1);
    while (auto s = en.next()) {
        Vec v;
        v.c = s->basis[0];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> contains_translate(const PointSet& K, const Subspace& L) {
    if (K.dim() != L.n) throw DimensionMismatch("point set and subspace dimensions differ");
    const Field& f = K.field();
    std::vector<Vec> pts;
    for (uint64_t idx : L.points(f)) pts.push_back(vec_from_index(f, L.n, idx));
    for (uint64_t vi = 0; vi < K.universe(); ++vi) {
        if (!K.test(vi)) continue;  // 0 is in L, so v itself must be a member
        Vec v = vec_from_index(f, L.n, vi);
        bool ok = true;
        for (const Vec& p : pts) {
            Vec s;
            s.c.resize(L.n);
            for (int j = 0; j < L.n; ++j) s.c[j] = f.add(v.c[j], p.c[j]);
            if (!K.contains(s)) {
                ok = false;
                break;
            }
        }
        if (ok) return v;
    }
    return std::nullopt;
}

int matrix_rank(const Field& f, Matrix m) {
    if (m.empty()) return 0;
    int n = static_cast<int>(m[0].size());
    return canonicalize(f, n, std::move(m)).r;
}

Matrix random_matrix(const Field& f, int n, SplitMix64& rng) {
    Matrix m(n, std::vector<Elem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = rng.below(f.q());
    return m;
}

Matrix random_invertible(const Field& f, int n, SplitMix64& rng) {
    if (n < 1) throw DimensionMismatch("need n >= 1");
    for (;;) {
        Matrix m = random_matrix(f, n, rng);
        if (matrix_rank(f, m) == n) return m;
    }
}

Vec apply_matrix(const Field& f, const Matrix& t, const Vec& v) {
    int n = static_cast<int>(v.c.size());
    if (static_cast<int>(t.size()) != n) throw DimensionMismatch("matrix/vector size mismatch");
    Vec w;
    w.c.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w.c[i] = f.add(w.c[i], f.mul(t[i][j], v.c[j]));
    return w;
}

PointSet apply_map(const Matrix& t, const PointSet& k) {
    const Field& f = k.field();
    PointSet out(f, k.dim());
    k.for_each([&](uint64_t idx) {
        out.insert(apply_matrix(f, t, vec_from_index(f, k.dim(), idx)));
    });
    return out;
}

PointSet translate(const PointSet& k, const Vec& v) {
    const Field& f = k.field();
    if (static_cast<int>(v.c.size()) != k.dim())
        throw DimensionMismatch("translation vector dimension mismatch");
    PointSet out(f, k.dim());
    k.for_each([&](uint64_t idx) {
        Vec p = vec_from_index(f, k.dim(), idx);
        for (int j = 0; j < k.dim(); ++j) p.c[j] = f.add(p.c[j], v.c[j]);
        out.insert(p);
    });
    return out;
}

PointSet product(const PointSet& a, const PointSet& b) {
    const Field& f = a.field();
    if (f.q() != b.field().q())
        throw DimensionMismatch("product factors must share the field");
    PointSet out(f, a.dim() + b.dim());
    uint64_t ua = a.universe();
    b.for_each([&](uint64_t ib) {
        a.for_each([&](uint64_t ia) { out.insert(ia + ua * ib); });
    });
    return out;
}

}  // namespace kakeya
