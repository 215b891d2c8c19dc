#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kakeya/errors.hpp"

namespace kakeya {

/// A field element in canonical encoding: an integer in [0, q) whose base-p
/// digits are the coefficients of the representing polynomial, constant
/// term first.
using Elem = uint64_t;

/// Explicit finite field GF(p^m), q = p^m <= 2^20.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree m over GF(p), coefficients compared from the constant term up,
/// so two constructions of the same order agree bit for bit. For q <= 2^16 a
/// log/antilog table pair accelerates mul/inv/pow; the tables never leak into
/// the canonical encoding or the serialization header.
class Field {
public:
    /// Builds the field of order q. Throws NotAPrimePower unless q = p^m with
    /// p prime and m >= 1 (q = 1 is rejected).
    static Field of_order(uint64_t q);

    uint64_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint64_t q() const { return q_; }

    /// Modulus coefficients c0..cm, constant term first, cm = 1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool is_char2() const { return p_ == 2; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // throws DivisionByZero for a = 0
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, uint64_t e) const;

    /// Unique square root in characteristic 2 (x -> x^2 is a bijection).
    Elem sqrt_char2(Elem a) const;

    /// tr(a) = a + a^p + ... + a^{p^(m-1)}; lands in the prime subfield, so
    /// the returned element value is an integer < p.
    Elem trace(Elem a) const;

    /// psi(a) = (-1)^{tr(a)}; characteristic 2 only.
    int additive_character(Elem a) const;

    /// Exact solution set of alpha x^2 + beta x + gamma = 0 over GF(2^m),
    /// sorted ascending. Requires characteristic 2 and alpha != 0.
    std::vector<Elem> quad_solve_char2(Elem alpha, Elem beta, Elem gamma) const;

    /// Multiplicative order of a nonzero element.
    uint64_t mult_order(Elem a) const;

    /// Serialization header fragment: `q=<q> p=<p> m=<m> mod=<c0,...,cm>`.
    std::string header() const;

    bool has_tables() const { return !log_.empty(); }

    /// A fixed generator of the multiplicative group (the one found while
    /// building the tables; smallest element value that generates).
    Elem generator() const;

private:
    Field(uint64_t p, uint32_t m);

    std::vector<uint32_t> to_digits(Elem a) const;
    Elem from_digits(const std::vector<uint32_t>& d) const;
    Elem mul_raw(Elem a, Elem b) const;  // polynomial multiply + reduce
    Elem pow_raw(Elem a, uint64_t e) const;
    void build_tables();

    uint64_t p_;
    uint32_t m_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;   // c0..cm
    std::vector<uint64_t> pow_p_;     // p^0..p^m
    std::vector<uint32_t> log_;       // index: element value, log_[0] unused
    std::vector<Elem> exp_;           // exp_[i] = g^i, i in [0, q-1)
    Elem generator_ = 0;
};

}  // namespace kakeya
