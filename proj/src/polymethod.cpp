#include "kakeya/polymethod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

constexpr int kMaxVars = 6;
constexpr uint32_t kMaxDegree = 64;

// C(a, b) for a <= 64 fits in 64 bits.
uint64_t binom_u64(uint32_t a, uint32_t b) {
    if (b > a) return 0;
    if (a - b < b) b = a - b;
    uint64_t num = 1;
    for (uint32_t i = 0; i < b; ++i) num = num * (a - i) / (i + 1);
    return num;
}

// Product over coordinates of C(e_k, i_k), reduced into the field's prime
// subfield.
Elem binom_prod(const Field& f, const ExpVec& e, const ExpVec& i) {
    uint64_t acc = 1;
    for (size_t k = 0; k < e.size(); ++k) {
        acc = (acc * (binom_u64(e[k], i[k]) % f.p())) % f.p();
        if (acc == 0) return 0;
    }
    return acc;
}

bool leq_componentwise(const ExpVec& a, const ExpVec& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

// Graded-lex: by total degree, ties broken lexicographically.
bool graded_lex_less(const ExpVec& a, const ExpVec& b) {
    uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

// All exponent vectors in n variables with total degree <= cap, graded-lex.
std::vector<ExpVec> monomials_upto(int n, uint32_t cap) {
    std::vector<ExpVec> out;
    ExpVec cur(n, 0);
    std::function<void(int, uint32_t)> rec = [&](int pos, uint32_t left) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, cap);
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

}  // namespace

MultiPoly::MultiPoly(const Field& f, int n_vars) : field_(&f), n_vars_(n_vars) {
    if (n_vars < 1 || n_vars > kMaxVars)
        throw TooLarge("polynomial variable count out of range [1,6]");
}

int MultiPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
}

void MultiPoly::add_term(const ExpVec& e, Elem c) {
    if (static_cast<int>(e.size()) != n_vars_)
        throw DimensionMismatch("exponent vector arity mismatch");
    if (total_degree(e) > kMaxDegree) throw TooLarge("total degree above 64");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        Elem s = field_->add(it->second, c);
        if (s == 0)
            terms_.erase(it);
        else
            it->second = s;
    }
}

Elem MultiPoly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

MultiPoly MultiPoly::plus(const MultiPoly& o) const {
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::times(const MultiPoly& o) const {
    MultiPoly out(*field_, n_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            ExpVec e(n_vars_);
            for (int k = 0; k < n_vars_; ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, field_->mul(ca, cb));
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(Elem c) const {
    MultiPoly out(*field_, n_vars_);
    for (const auto& [e, v] : terms_) out.add_term(e, field_->mul(v, c));
    return out;
}

Elem MultiPoly::eval(const std::vector<Elem>& point) const {
    if (static_cast<int>(point.size()) != n_vars_)
        throw DimensionMismatch("evaluation point arity mismatch");
    Elem acc = 0;
    for (const auto& [e, c] : terms_) {
        Elem t = c;
        for (int k = 0; k < n_vars_; ++k)
            if (e[k]) t = field_->mul(t, field_->pow(point[k], e[k]));
        acc = field_->add(acc, t);
    }
    return acc;
}

MultiPoly MultiPoly::shifted(const std::vector<Elem>& a) const {
    if (static_cast<int>(a.size()) != n_vars_)
        throw DimensionMismatch("shift vector arity mismatch");
    MultiPoly out(*field_, n_vars_);
    for (const auto& [e, c] : terms_) {
        // Expand c * prod_k (X_k + a_k)^{e_k}.
        ExpVec j(n_vars_, 0);
        std::function<void(int, Elem)> rec = [&](int pos, Elem acc) {
            if (acc == 0) return;
            if (pos == n_vars_) {
                out.add_term(j, acc);
                return;
            }
            for (uint32_t jk = 0; jk <= e[pos]; ++jk) {
                j[pos] = jk;
                Elem f1 = binom_u64(e[pos], jk) % field_->p();
                Elem f2 = field_->pow(a[pos], e[pos] - jk);
                rec(pos + 1, field_->mul(acc, field_->mul(f1, f2)));
            }
            j[pos] = 0;
        };
        rec(0, c);
    }
    return out;
}

MultiPoly MultiPoly::homogeneous_part() const {
    MultiPoly out(*field_, n_vars_);
    int d = degree();
    for (const auto& [e, c] : terms_)
        if (static_cast<int>(total_degree(e)) == d) out.add_term(e, c);
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const ExpVec, Elem>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](auto* a, auto* b) { return graded_lex_less(a->first, b->first); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        if (!first) os << " + ";
        first = false;
        os << t->second;
        for (int k = 0; k < n_vars_; ++k) {
            if (t->first[k] == 0) continue;
            os << " * X" << (k + 1) << "^" << t->first[k];
        }
    }
    return os.str();
}

MultiPoly hasse_derivative(const MultiPoly& p, const ExpVec& i) {
    const Field& f = p.field();
    if (static_cast<int>(i.size()) != p.n_vars())
        throw DimensionMismatch("derivative order arity mismatch");
    MultiPoly out(f, p.n_vars());
    for (const auto& [e, c] : p.terms()) {
        if (!leq_componentwise(i, e)) continue;
        Elem b = binom_prod(f, e, i);
        if (b == 0) continue;
        ExpVec rest(p.n_vars());
        for (int k = 0; k < p.n_vars(); ++k) rest[k] = e[k] - i[k];
        out.add_term(rest, f.mul(c, b));
    }
    return out;
}

uint32_t multiplicity(const MultiPoly& p, const Vec& a) {
    if (p.is_zero()) return kInfiniteMultiplicity;
    MultiPoly s = p.shifted(std::vector<Elem>(a.c.begin(), a.c.end()));
    uint32_t best = kInfiniteMultiplicity;
    for (const auto& [e, c] : s.terms()) best = std::min(best, total_degree(e));
    return best;
}

uint32_t multiplicity_by_derivatives(const MultiPoly& p, const Vec& a) {
    if (p.is_zero()) return kInfiniteMultiplicity;
    std::vector<Elem> pt(a.c.begin(), a.c.end());
    uint32_t cap = static_cast<uint32_t>(p.degree());
    for (uint32_t w = 0; w <= cap; ++w) {
        for (const ExpVec& i : monomials_upto(p.n_vars(), w)) {
            if (total_degree(i) != w) continue;
            if (hasse_derivative(p, i).eval(pt) != 0) return w;
        }
    }
    return cap + 1;  // unreachable for a nonzero polynomial
}

MultiPoly restrict_to_flat(const MultiPoly& p, const Vec& b, const std::vector<Vec>& dirs) {
    const Field& f = p.field();
    int n = p.n_vars();
    int r = static_cast<int>(dirs.size());
    if (static_cast<int>(b.c.size()) != n) throw DimensionMismatch("base point arity mismatch");
    for (const Vec& d : dirs)
        if (static_cast<int>(d.c.size()) != n)
            throw DimensionMismatch("direction arity mismatch");

    // Linear substitution for each original variable: b_k + sum_i d_i[k] T_i.
    std::vector<MultiPoly> lin;
    for (int k = 0; k < n; ++k) {
        MultiPoly l(f, r);
        l.add_term(ExpVec(r, 0), b.c[k]);
        for (int i = 0; i < r; ++i) {
            ExpVec e(r, 0);
            e[i] = 1;
            l.add_term(e, dirs[i].c[k]);
        }
        lin.push_back(std::move(l));
    }

    MultiPoly out(f, r);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term(f, r);
        term.add_term(ExpVec(r, 0), c);
        for (int k = 0; k < n; ++k)
            for (uint32_t rep = 0; rep < e[k]; ++rep) term = term.times(lin[k]);
        out = out.plus(term);
    }
    return out;
}

MultiPoly vanishing_poly(const Field& f, int n_vars, const std::vector<Vec>& S,
                         uint32_t m, uint32_t k) {
    if (m < 1) throw BadParameter("multiplicity must be at least 1");
    Int rows_bound = binomial(Int(m) + n_vars - 1, Int(n_vars)) * Int(S.size());
    Int cols_bound = binomial(Int(n_vars) + k, Int(n_vars));
    if (!(rows_bound < cols_bound))
        throw ConditionViolated("binom(m+n-1,n)|S| < binom(n+k,n) fails");

    std::vector<ExpVec> cols = monomials_upto(n_vars, k);
    std::vector<ExpVec> orders;
    for (const ExpVec& i : monomials_upto(n_vars, m - 1)) orders.push_back(i);

    // One linear constraint per (point, derivative order): the order-i Hasse
    // derivative vanishes at the point.
    std::vector<std::vector<Elem>> mat;
    for (const Vec& s : S) {
        for (const ExpVec& i : orders) {
            std::vector<Elem> row(cols.size(), 0);
            for (size_t c = 0; c < cols.size(); ++c) {
                const ExpVec& e = cols[c];
                if (!leq_componentwise(i, e)) continue;
                Elem b = binom_prod(f, e, i);
                if (b == 0) continue;
                Elem val = b;
                for (int v = 0; v < n_vars; ++v)
                    if (e[v] > i[v]) val = f.mul(val, f.pow(s.c[v], e[v] - i[v]));
                row[c] = val;
            }
            mat.push_back(std::move(row));
        }
    }

    // Gaussian elimination with deterministic smallest-index pivoting; the
    // column count exceeds the row count, so a free column always exists.
    size_t ncols = cols.size();
    std::vector<int> pivot_of_col(ncols, -1);
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < mat.size(); ++col) {
        size_t sel = rank;
        while (sel < mat.size() && mat[sel][col] == 0) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[rank], mat[sel]);
        Elem s = f.inv(mat[rank][col]);
        for (size_t j = 0; j < ncols; ++j) mat[rank][j] = f.mul(mat[rank][j], s);
        for (size_t i = 0; i < mat.size(); ++i) {
            if (i == rank || mat[i][col] == 0) continue;
            Elem c = mat[i][col];
            for (size_t j = 0; j < ncols; ++j)
                mat[i][j] = f.sub(mat[i][j], f.mul(c, mat[rank][j]));
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }

    size_t free_col = 0;
    while (free_col < ncols && pivot_of_col[free_col] >= 0) ++free_col;
    if (free_col == ncols)
        throw std::logic_error("no free column despite dimension count");

    // Solution: free column coefficient 1, pivots back-substituted.
    MultiPoly out(f, n_vars);
    out.add_term(cols[free_col], 1);
    for (size_t col = 0; col < ncols; ++col) {
        int pr = pivot_of_col[col];
        if (pr < 0) continue;
        Elem v = f.neg(mat[pr][free_col]);
        out.add_term(cols[col], v);
    }
    return out;
}

SzAudit sz_audit(const MultiPoly& p, const std::vector<Elem>& S) {
    if (p.is_zero()) throw ZeroPolynomial("Schwartz-Zippel audit needs a nonzero polynomial");
    int n = p.n_vars();
    Int lhs = 0;
    std::vector<size_t> idx(n, 0);
    for (;;) {
        Vec z;
        for (int k = 0; k < n; ++k) z.c.push_back(S[idx[k]]);
        lhs += multiplicity(p, z);
        int pos = 0;
        while (pos < n) {
            if (++idx[pos] < S.size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    Int rhs = Int(p.degree()) * ipow(Int(S.size()), n - 1);
    return {lhs, rhs, lhs <= rhs};
}

WitnessAudit lower_bound_witness_audit(const PointSet& K, int r, uint64_t N) {
    const Field& f = K.field();
    int n = K.dim();
    Int q = f.q();
    Int k = Int(N) * ipow(q, r + 1) - 1;
    Int m = (ipow(q, r) + q - 1) * N;
    Int lhs = binomial(m + n - 1, Int(n)) * Int(K.card());
    Int rhs = binomial(Int(n) + k, Int(n));
    return {k, m, lhs, rhs, lhs >= rhs};
}

}  // namespace kakeya
