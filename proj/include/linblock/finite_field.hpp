#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "linblock/error.hpp"

namespace linblock {

/// Dense element code of GF(p^t): the base-p digits of the code are the
/// coefficients of a polynomial of degree < t (least significant digit first).
using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^t) defined by an explicit monic irreducible modulus of degree t.
///
/// Immutable after construction. When q <= 2^16 the constructor also builds
/// log/antilog tables and a Zech table for addition; otherwise every operation
/// falls back to polynomial arithmetic on the digit vectors.
class Field {
public:
    static constexpr std::uint64_t kTableLimit = 1u << 16;
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

    /// Validates p, t and the modulus. An empty modulus selects the
    /// lexicographically smallest monic irreducible polynomial, compared as
    /// the coefficient list [c0, c1, ..., c_{t-1}] with c0 most significant.
    /// For t = 1 the modulus is the convention [0, 1].
    static FieldPtr make(std::uint32_t p, std::uint32_t t, std::vector<std::uint32_t> modulus = {});

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t t() const noexcept { return t_; }
    std::uint32_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    bool has_tables() const noexcept { return !log_.empty(); }

    /// A generator of the multiplicative group (the smallest code of order q-1).
    Elem primitive() const noexcept { return primitive_; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const noexcept;

    /// a^(p^k); k is taken modulo t.
    Elem frobenius(Elem a, std::int64_t k) const noexcept;

    /// Discrete logarithm base primitive(); a must be nonzero.
    std::uint32_t log(Elem a) const;
    Elem exp(std::uint64_t k) const noexcept;

    std::vector<std::uint32_t> digits(Elem a) const;
    Elem from_digits(std::span<const std::uint32_t> digits) const;

    /// Polynomial-route arithmetic; independent of the tables.
    Elem add_poly(Elem a, Elem b) const noexcept;
    Elem mul_poly(Elem a, Elem b) const noexcept;

    bool same_as(const Field& other) const noexcept {
        return p_ == other.p_ && t_ == other.t_ && modulus_ == other.modulus_;
    }

private:
    Field(std::uint32_t p, std::uint32_t t, std::vector<std::uint32_t> modulus);

    void build_tables();
    Elem find_primitive() const;

    std::uint32_t p_;
    std::uint32_t t_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    Elem primitive_ = 1;
    Elem minus_one_log_ = 0;

    // Populated only when q <= kTableLimit.
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;           // length 2(q-1)
    std::vector<std::int32_t> zech_;  // log(1 + g^k), -1 when 1 + g^k = 0
};

inline Elem Field::add(Elem a, Elem b) const noexcept {
    if (t_ == 1) {
        const Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!has_tables()) return add_poly(a, b);
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a], lb = log_[b];
    const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
}

inline Elem Field::neg(Elem a) const noexcept {
    if (a == 0 || p_ == 2) return a;
    if (t_ == 1) return p_ - a;
    if (has_tables()) return exp_[log_[a] + minus_one_log_];
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < t_; ++i) {
        const Elem d = a % p_;
        a /= p_;
        out += (d ? p_ - d : 0) * scale;
        scale *= p_;
    }
    return out;
}

inline Elem Field::sub(Elem a, Elem b) const noexcept {
    if (t_ == 1) return a >= b ? a - b : a + p_ - b;
    return add(a, neg(b));
}

inline Elem Field::mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

/// Convenience alias matching the interchange vocabulary.
inline FieldPtr make_field(std::uint32_t p, std::uint32_t t, std::vector<std::uint32_t> modulus = {}) {
    return Field::make(p, t, std::move(modulus));
}

bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// True iff the monic polynomial with coefficients c0..ct is irreducible over GF(p).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// Checked element wrapper. Arithmetic across different fields throws
/// ErrorKind::MixedFields.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem code);

    const FieldPtr& field() const noexcept { return field_; }
    Elem code() const noexcept { return code_; }

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t k) const;
    FieldElement frobenius(std::int64_t k) const;

    bool operator==(const FieldElement& rhs) const {
        return code_ == rhs.code_ && field_->same_as(*rhs.field_);
    }

private:
    void check_same(const FieldElement& rhs) const;

    FieldPtr field_;
    Elem code_;
};

/// The subfield GF(p^e) of GF(p^t) for e | t.
///
/// The subfield is carried as its own Field (auto modulus) together with an
/// embedding into the big field. For e = t the small field is the big field
/// itself and the embedding is the identity.
class Subfield {
public:
    Subfield(FieldPtr big, std::uint32_t e);

    const FieldPtr& big() const noexcept { return big_; }
    const FieldPtr& small() const noexcept { return small_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t order() const noexcept { return small_->q(); }

    bool contains(Elem big_code) const noexcept { return member_[big_code]; }
    Elem embed(Elem small_code) const noexcept { return embed_[small_code]; }
    /// Inverse of embed; the argument must lie in the subfield.
    Elem restrict(Elem big_code) const;

    std::size_t member_count() const noexcept;

private:
    FieldPtr big_;
    FieldPtr small_;
    std::uint32_t e_;
    std::vector<Elem> embed_;
    std::vector<std::int64_t> restrict_;
    std::vector<bool> member_;
};

} // namespace linblock
