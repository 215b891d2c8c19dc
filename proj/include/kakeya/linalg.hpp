#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kakeya/gf.hpp"
#include "kakeya/rational.hpp"
#include "kakeya/rng.hpp"

namespace kakeya {

/// A point of F_q^n. Canonical index: base-q positional encoding with
/// coordinate 0 least significant.
struct Vec {
    std::vector<Elem> c;

    bool operator==(const Vec&) const = default;
};

uint64_t vec_index(const Field& f, const Vec& v);
Vec vec_from_index(const Field& f, int n, uint64_t index);

/// Bit-packed subset of F_q^n with cached cardinality. The universe q^n is
/// guarded at 2^34 addressable points.
class PointSet {
public:
    PointSet(const Field& f, int n);

    const Field& field() const { return *field_; }
    int dim() const { return n_; }
    uint64_t universe() const { return universe_; }
    uint64_t card() const { return card_; }

    bool test(uint64_t index) const {
        return (words_[index >> 6] >> (index & 63)) & 1;
    }
    bool contains(const Vec& v) const { return test(vec_index(*field_, v)); }

    void insert(uint64_t index);
    void insert(const Vec& v) { insert(vec_index(*field_, v)); }
    void erase(uint64_t index);

    /// Member indices, ascending.
    std::vector<uint64_t> members() const;
    void for_each(const std::function<void(uint64_t)>& fn) const;

    static PointSet full(const Field& f, int n);

    bool operator==(const PointSet& o) const {
        return field_->q() == o.field_->q() && n_ == o.n_ && words_ == o.words_;
    }

private:
    const Field* field_;
    int n_;
    uint64_t universe_;
    std::vector<uint64_t> words_;
    uint64_t card_;
};

/// r-dimensional subspace of F_q^n in reduced row echelon form; the RREF
/// basis is the canonical representative, so equal subspaces compare equal.
struct Subspace {
    int n = 0;
    int r = 0;
    std::vector<std::vector<Elem>> basis;  // r rows of n entries
    std::vector<int> pivots;               // strictly increasing

    bool operator==(const Subspace&) const = default;

    /// All q^r points of the subspace, as canonical indices.
    std::vector<uint64_t> points(const Field& f) const;
};

/// RREF-canonicalize an arbitrary generating matrix. Returns the subspace it
/// spans (rank may be below the row count).
Subspace canonicalize(const Field& f, int n, std::vector<std::vector<Elem>> rows);

/// Streams every r-dimensional subspace of F_q^n exactly once: pivot-column
/// sets in lexicographic order, free entries in ascending counter order.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(const Field& f, int n, int r, Int guard = Int(100000000));

    Int total() const { return total_; }
    std::optional<Subspace> next();

private:
    void load_pivots();

    const Field* field_;
    int n_, r_;
    Int total_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_pos_;  // (row, col) of free entries
    std::vector<Elem> free_val_;
    bool pivots_done_ = false;
    bool block_fresh_ = true;
};

/// One representative per direction (1-dimensional subspace), first nonzero
/// coordinate normalized to 1, emitted in canonical order.
std::vector<Vec> enum_directions(const Field& f, int n);

/// Smallest canonical-index v with v + L contained in K, if any.
std::optional<Vec> contains_translate(const PointSet& K, const Subspace& L);

using Matrix = std::vector<std::vector<Elem>>;

int matrix_rank(const Field& f, Matrix m);
Matrix random_matrix(const Field& f, int n, SplitMix64& rng);

/// Uniform over GL(n, q) by rejection sampling on uniform matrices.
Matrix random_invertible(const Field& f, int n, SplitMix64& rng);

Vec apply_matrix(const Field& f, const Matrix& t, const Vec& v);

PointSet apply_map(const Matrix& t, const PointSet& k);
PointSet translate(const PointSet& k, const Vec& v);

/// Cartesian product; the first factor occupies the low coordinates.
PointSet product(const PointSet& a, const PointSet& b);

}  // namespace kakeya
