#include "kakeya/gf.hpp"

#include <algorithm>
#include <sstream>

namespace kakeya {

namespace {

constexpr uint64_t kMaxOrder = 1ULL << 20;
constexpr uint64_t kTableLimit = 1ULL << 16;

// Dense polynomial over GF(p), coefficients c0..cdeg (trailing zeros trimmed).
using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod b, b monic.
Poly poly_rem(Poly a, const Poly& b, uint64_t p) {
    trim(a);
    size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        uint64_t c = a.back();
        size_t shift = a.size() - 1 - db;
        for (size_t j = 0; j <= db; ++j) {
            uint64_t sub = (c * b[j]) % p;
            a[shift + j] = static_cast<uint32_t>((a[shift + j] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

bool is_irreducible(const Poly& f, uint64_t p) {
    uint32_t m = static_cast<uint32_t>(f.size() - 1);
    if (m == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    // Trial division by every monic polynomial of degree 1..m/2.
    for (uint32_t d = 1; 2 * d <= m; ++d) {
        uint64_t total = 1;
        for (uint32_t i = 0; i < d; ++i) total *= p;
        for (uint64_t idx = 0; idx < total; ++idx) {
            Poly g(d + 1, 0);
            uint64_t t = idx;
            for (uint32_t i = 0; i < d; ++i) {
                g[i] = static_cast<uint32_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree m over GF(p),
// coefficients compared from the constant term up.
Poly smallest_irreducible(uint64_t p, uint32_t m) {
    std::vector<uint32_t> low(m, 0);
    for (;;) {
        Poly f(low.begin(), low.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
        // Increment (c0,...,c_{m-1}) with c_{m-1} fastest, so tuples are
        // visited in ascending lex order with c0 most significant.
        int i = static_cast<int>(m) - 1;
        while (i >= 0) {
            if (++low[i] < p) break;
            low[i] = 0;
            --i;
        }
        if (i < 0) throw std::logic_error("no irreducible polynomial found");
    }
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

Field Field::of_order(uint64_t q) {
    if (q < 2) throw NotAPrimePower("field order must be at least 2");
    if (q > kMaxOrder) throw TooLarge("field order above 2^20");
    uint64_t p = 0;
    for (uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;  // q itself is prime
    uint32_t m = 0;
    uint64_t t = q;
    while (t % p == 0) {
        t /= p;
        ++m;
    }
    if (t != 1)
        throw NotAPrimePower(std::to_string(q) + " is not a prime power");
    return Field(p, m);
}

Field::Field(uint64_t p, uint32_t m) : p_(p), m_(m) {
    q_ = 1;
    pow_p_.push_back(1);
    for (uint32_t i = 0; i < m; ++i) {
        q_ *= p;
        pow_p_.push_back(q_);
    }
    Poly f = smallest_irreducible(p, m);
    modulus_.assign(f.begin(), f.end());
    if (q_ <= kTableLimit) build_tables();
}

std::vector<uint32_t> Field::to_digits(Elem a) const {
    std::vector<uint32_t> d(m_);
    for (uint32_t i = 0; i < m_; ++i) {
        d[i] = static_cast<uint32_t>(a % p_);
        a /= p_;
    }
    return d;
}

Elem Field::from_digits(const std::vector<uint32_t>& d) const {
    Elem a = 0;
    for (uint32_t i = 0; i < m_; ++i) a += static_cast<Elem>(d[i]) * pow_p_[i];
    return a;
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem out = 0;
    for (uint32_t i = 0; i < m_; ++i) {
        out += ((a % p_ + b % p_) % p_) * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return out;
}

Elem Field::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem out = 0;
    for (uint32_t i = 0; i < m_; ++i) {
        out += ((p_ - a % p_) % p_) * pow_p_[i];
        a /= p_;
    }
    return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_raw(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::vector<uint32_t> da = to_digits(a), db = to_digits(b);
    std::vector<uint64_t> prod(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (uint32_t j = 0; j < m_; ++j)
            prod[i + j] += static_cast<uint64_t>(da[i]) * db[j];
    }
    for (auto& c : prod) c %= p_;
    // Reduce mod the monic modulus.
    for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(m_); --d) {
        uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (uint32_t j = 0; j < m_; ++j) {
            uint64_t sub = (c * modulus_[j]) % p_;
            prod[d - m_ + j] = (prod[d - m_ + j] + p_ - sub) % p_;
        }
    }
    std::vector<uint32_t> out(m_);
    for (uint32_t i = 0; i < m_; ++i) out[i] = static_cast<uint32_t>(prod[i]);
    return from_digits(out);
}

Elem Field::pow_raw(Elem a, uint64_t e) const {
    Elem acc = 1, b = a;
    while (e) {
        if (e & 1) acc = mul_raw(acc, b);
        b = mul_raw(b, b);
        e >>= 1;
    }
    return acc;
}

void Field::build_tables() {
    uint64_t order = q_ - 1;
    auto factors = prime_factors(order);
    for (Elem g = 1; g < q_; ++g) {
        bool primitive = true;
        for (uint64_t f : factors) {
            if (pow_raw(g, order / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = g;
            break;
        }
    }
    exp_.resize(order);
    log_.assign(q_, 0);
    Elem x = 1;
    for (uint64_t i = 0; i < order; ++i) {
        exp_[i] = x;
        log_[x] = static_cast<uint32_t>(i);
        x = mul_raw(x, generator_);
    }
}

Elem Field::generator() const {
    if (!has_tables()) throw TooLarge("generator available only with tables");
    return generator_;
}

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        uint64_t s = log_[a] + log_[b];
        uint64_t order = q_ - 1;
        if (s >= order) s -= order;
        return exp_[s];
    }
    return mul_raw(a, b);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (has_tables()) {
        uint64_t order = q_ - 1;
        uint64_t l = log_[a];
        return exp_[l == 0 ? 0 : order - l];
    }
    return pow_raw(a, q_ - 2);
}

Elem Field::pow(Elem a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (has_tables()) {
        uint64_t order = q_ - 1;
        uint64_t l = (static_cast<unsigned __int128>(log_[a]) * e) % order;
        return exp_[l];
    }
    return pow_raw(a, e);
}

Elem Field::sqrt_char2(Elem a) const {
    if (p_ != 2) throw WrongCharacteristic("square root map needs characteristic 2");
    return pow(a, q_ / 2);
}

Elem Field::trace(Elem a) const {
    Elem acc = 0, x = a;
    for (uint32_t i = 0; i < m_; ++i) {
        acc = add(acc, x);
        x = pow(x, p_);
    }
    return acc;
}

int Field::additive_character(Elem a) const {
    if (p_ != 2) throw WrongCharacteristic("additive character defined for characteristic 2");
    return trace(a) == 0 ? 1 : -1;
}

std::vector<Elem> Field::quad_solve_char2(Elem alpha, Elem beta, Elem gamma) const {
    if (p_ != 2) throw WrongCharacteristic("quadratic solver needs characteristic 2");
    if (alpha == 0) throw ZeroLeadingCoefficient("alpha must be nonzero");
    if (beta == 0) {
        // x^2 = gamma/alpha has the unique root (gamma/alpha)^{q/2}.
        return {sqrt_char2(div(gamma, alpha))};
    }
    Elem c = div(mul(alpha, gamma), mul(beta, beta));
    if (trace(c) == 1) return {};
    // y^2 + y = c; scan for one root, the other is y+1.
    Elem y0 = 0;
    bool found = false;
    for (Elem y = 0; y < q_; ++y) {
        if (add(mul(y, y), y) == c) {
            y0 = y;
            found = true;
            break;
        }
    }
    if (!found) return {};  // unreachable when trace(c) = 0
    Elem scale = div(beta, alpha);
    std::vector<Elem> out = {mul(scale, y0), mul(scale, add(y0, 1))};
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t Field::mult_order(Elem a) const {
    if (a == 0) throw DivisionByZero("order of zero");
    uint64_t order = q_ - 1;
    for (uint64_t f : prime_factors(order)) {
        while (order % f == 0 && pow(a, order / f) == 1) order /= f;
    }
    return order;
}

std::string Field::header() const {
    std::ostringstream os;
    os << "q=" << q_ << " p=" << p_ << " m=" << m_ << " mod=";
    for (size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ',';
        os << modulus_[i];
    }
    return os.str();
}

}  // namespace kakeya
