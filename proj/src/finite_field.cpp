#include "linblock/finite_field.hpp"

#include <algorithm>
#include <string>

namespace linblock {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::NonDivisorDegree: return "NonDivisorDegree";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EqualPoints: return "EqualPoints";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroOnly: return "ZeroOnly";
    case ErrorKind::NotASubline: return "NotASubline";
    case ErrorKind::LiftInconsistent: return "LiftInconsistent";
    case ErrorKind::NotBlocking: return "NotBlocking";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::QInB: return "QInB";
    case ErrorKind::QInH: return "QInH";
    case ErrorKind::NotCollinear: return "NotCollinear";
    case ErrorKind::WrongSize: return "WrongSize";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::UnknownLemma: return "UnknownLemma";
    case ErrorKind::NotASecant: return "NotASecant";
    case ErrorKind::NoSecant: return "NoSecant";
    case ErrorKind::NotSmallMinimal: return "NotSmallMinimal";
    case ErrorKind::ExponentNotDivisor: return "ExponentNotDivisor";
    case ErrorKind::GuardExceeded: return "GuardExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p;
    std::uint64_t k = p - 2;
    while (k) {
        if (k & 1) result = result * base % p;
        base = base * base % p;
        k >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

} // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
    const std::size_t t = monic.size() - 1;
    if (t == 1) return true;
    Poly f(monic.begin(), monic.end());
    // Trial division by every monic polynomial of degree 1..t/2.
    for (std::size_t d = 1; d <= t / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            Poly g(d + 1, 0);
            std::uint64_t rest = m;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t t, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (t == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < t; ++i) {
        q *= p;
        if (q > kMaxOrder) throw Error(ErrorKind::InvalidArgument, "field order exceeds 2^31");
    }
    if (modulus.empty()) {
        if (t == 1) {
            modulus = {0, 1};
        } else {
            // Counter digits map to c0 (most significant) .. c_{t-1}.
            const std::uint64_t count = q;
            for (std::uint64_t m = 0; m < count; ++m) {
                std::vector<std::uint32_t> cand(t + 1, 0);
                std::uint64_t rest = m;
                for (std::uint32_t i = 0; i < t; ++i) {
                    cand[t - 1 - i] = static_cast<std::uint32_t>(rest % p);
                    rest /= p;
                }
                cand[t] = 1;
                if (cand[0] != 0 && is_irreducible(p, cand)) {
                    modulus = std::move(cand);
                    break;
                }
            }
        }
    } else {
        if (modulus.size() != t + 1)
            throw Error(ErrorKind::InvalidModulus, "modulus must have t+1 coefficients");
        for (auto c : modulus)
            if (c >= p) throw Error(ErrorKind::InvalidModulus, "modulus coefficient out of range");
        if (modulus.back() != 1) throw Error(ErrorKind::InvalidModulus, "modulus must be monic");
        if (!is_irreducible(p, modulus))
            throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
    return FieldPtr(new Field(p, t, std::move(modulus)));
}

Field::Field(std::uint32_t p, std::uint32_t t, std::vector<std::uint32_t> modulus)
    : p_(p), t_(t), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < t; ++i) q_ *= p;
    primitive_ = find_primitive();
    minus_one_log_ = (p_ == 2) ? 0 : (q_ - 1) / 2;
    if (q_ <= kTableLimit) build_tables();
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
    std::vector<std::uint32_t> d(t_, 0);
    for (std::uint32_t i = 0; i < t_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
    Elem code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) code = code * p_ + digits[i] % p_;
    return code;
}

Elem Field::add_poly(Elem a, Elem b) const noexcept {
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < t_; ++i) {
        const Elem da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        Elem s = da + db;
        if (s >= p_) s -= p_;
        out += s * scale;
        scale *= p_;
    }
    return out;
}

Elem Field::mul_poly(Elem a, Elem b) const noexcept {
    if (t_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    std::vector<std::uint64_t> prod(2 * t_ - 1, 0);
    std::vector<std::uint32_t> da(t_), db(t_);
    for (std::uint32_t i = 0; i < t_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < t_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < t_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    }
    // x^t = -(c0 + c1 x + ... + c_{t-1} x^{t-1})
    for (std::uint32_t k = 2 * t_ - 2; k >= t_; --k) {
        const std::uint64_t c = prod[k];
        if (c) {
            prod[k] = 0;
            for (std::uint32_t i = 0; i < t_; ++i) {
                const std::uint64_t sub = c * modulus_[i] % p_;
                prod[k - t_ + i] = (prod[k - t_ + i] + p_ - sub) % p_;
            }
        }
    }
    Elem out = 0;
    for (std::uint32_t i = t_; i-- > 0;) out = out * p_ + static_cast<Elem>(prod[i]);
    return out;
}

Elem Field::find_primitive() const {
    if (q_ == 2) return 1;
    const auto factors = prime_factors(q_ - 1);
    auto slow_pow = [&](Elem a, std::uint64_t k) {
        Elem result = 1;
        while (k) {
            if (k & 1) result = mul_poly(result, a);
            a = mul_poly(a, a);
            k >>= 1;
        }
        return result;
    };
    for (Elem g = 2; g < q_; ++g) {
        bool ok = true;
        for (auto r : factors) {
            if (slow_pow(g, (q_ - 1) / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 1;
}

void Field::build_tables() {
    const std::uint32_t order = q_ - 1;
    log_.assign(q_, 0);
    exp_.assign(2 * std::size_t{order} + 1, 0);
    Elem x = 1;
    for (std::uint32_t k = 0; k < order; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = mul_poly(x, primitive_);
    }
    for (std::uint32_t k = order; k < exp_.size(); ++k) exp_[k] = exp_[k - order];
    zech_.assign(order, -1);
    for (std::uint32_t k = 0; k < order; ++k) {
        const Elem s = add_poly(1, exp_[k]);
        zech_[k] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "zero has no inverse");
    if (has_tables()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
    if (k == 0) return 1;
    if (a == 0) return 0;
    if (has_tables()) {
        const std::uint64_t e = (std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1);
        return exp_[e];
    }
    Elem result = 1;
    while (k) {
        if (k & 1) result = mul(result, a);
        a = mul(a, a);
        k >>= 1;
    }
    return result;
}

Elem Field::frobenius(Elem a, std::int64_t k) const noexcept {
    std::int64_t r = k % static_cast<std::int64_t>(t_);
    if (r < 0) r += t_;
    std::uint64_t e = 1;
    for (std::int64_t i = 0; i < r; ++i) e *= p_;
    return pow(a, e);
}

std::uint32_t Field::log(Elem a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "log of zero");
    if (has_tables()) return log_[a];
    Elem x = 1;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        if (x == a) return k;
        x = mul(x, primitive_);
    }
    return 0;
}

Elem Field::exp(std::uint64_t k) const noexcept {
    if (has_tables()) return exp_[k % (q_ - 1)];
    return pow(primitive_, k);
}

FieldElement::FieldElement(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {
    if (code_ >= field_->q()) throw Error(ErrorKind::InvalidArgument, "element code out of range");
}

void FieldElement::check_same(const FieldElement& rhs) const {
    if (field_ != rhs.field_ && !field_->same_as(*rhs.field_))
        throw Error(ErrorKind::MixedFields, "operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    check_same(rhs);
    return {field_, field_->add(code_, rhs.code_)};
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    check_same(rhs);
    return {field_, field_->sub(code_, rhs.code_)};
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    check_same(rhs);
    return {field_, field_->mul(code_, rhs.code_)};
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
    check_same(rhs);
    return {field_, field_->div(code_, rhs.code_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_->pow(code_, k)}; }
FieldElement FieldElement::frobenius(std::int64_t k) const { return {field_, field_->frobenius(code_, k)}; }

Subfield::Subfield(FieldPtr big, std::uint32_t e) : big_(std::move(big)), e_(e) {
    const std::uint32_t t = big_->t();
    if (e == 0 || t % e != 0)
        throw Error(ErrorKind::NonDivisorDegree, std::to_string(e) + " does not divide " + std::to_string(t));
    const std::uint32_t q = big_->q();
    member_.assign(q, false);
    for (Elem a = 0; a < q; ++a) member_[a] = big_->frobenius(a, e) == a;

    if (e == t) {
        small_ = big_;
        embed_.resize(q);
        for (Elem a = 0; a < q; ++a) embed_[a] = a;
    } else {
        small_ = Field::make(big_->p(), e);
        const auto& mod = small_->modulus();
        // Lowest-code root of the small modulus inside the big field.
        Elem beta = 0;
        for (Elem b = 0; b < q; ++b) {
            Elem value = 0, power = 1;
            for (auto c : mod) {
                value = big_->add(value, big_->mul(c, power));
                power = big_->mul(power, b);
            }
            if (value == 0) {
                beta = b;
                break;
            }
        }
        const std::uint32_t q0 = small_->q();
        embed_.resize(q0);
        for (Elem c = 0; c < q0; ++c) {
            Elem value = 0, power = 1;
            for (auto d : small_->digits(c)) {
                value = big_->add(value, big_->mul(d, power));
                power = big_->mul(power, beta);
            }
            embed_[c] = value;
        }
    }
    restrict_.assign(q, -1);
    for (Elem c = 0; c < embed_.size(); ++c) restrict_[embed_[c]] = c;
}

Elem Subfield::restrict(Elem big_code) const {
    const auto r = restrict_[big_code];
    if (r < 0) throw Error(ErrorKind::NotMember, "element is not in the subfield");
    return static_cast<Elem>(r);
}

std::size_t Subfield::member_count() const noexcept {
    return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true));
}

} // namespace linblock
