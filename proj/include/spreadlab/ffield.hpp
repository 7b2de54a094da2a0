#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace spreadlab {

// Element code: the coefficient vector (c0, ..., c_{f-1}) of the polynomial
// basis read as base-p digits with c0 least significant. Code order is the
// element order used everywhere determinism matters.
using Fq = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // Fields are interned: equal (p, f, irred) give the same pointer.
    static FieldPtr make(unsigned p, unsigned f,
                         const std::optional<std::vector<unsigned>>& irred = std::nullopt);

    unsigned p() const { return p_; }
    unsigned f() const { return f_; }
    std::uint32_t q() const { return q_; }
    const std::vector<unsigned>& irred() const { return irred_; }
    bool is_prime_field() const { return f_ == 1; }

    Fq add(Fq a, Fq b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q_ + b];
        return add_slow(a, b);
    }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq sub(Fq a, Fq b) const { return add(a, neg_[b]); }
    Fq mul(Fq a, Fq b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::int64_t k) const;

    // Image of an integer in the prime field.
    Fq from_int(std::int64_t v) const;
    std::vector<unsigned> coeffs(Fq a) const;
    Fq from_coeffs(const std::vector<unsigned>& c) const;

    // Smallest (in code order) generator of the multiplicative group.
    Fq primitive() const { return exp_[1]; }
    std::uint32_t log(Fq a) const;
    Fq exp(std::int64_t k) const;
    std::uint32_t mult_order(Fq a) const;

    Fq frobenius(Fq a, std::int64_t i) const;
    bool is_square(Fq a) const;

    // Subfield support. `sub` must have the same characteristic and a degree
    // dividing f. The embedding sends sub's generator to the smallest root of
    // sub's defining polynomial.
    bool has_subfield(const Field& sub) const;
    Fq embed(Fq y, const Field& sub) const;
    std::optional<Fq> restrict_to(Fq x, const Field& sub) const;
    Fq norm(Fq x, const Field& sub) const;
    Fq trace(Fq x, const Field& sub) const;

    std::string format(Fq a) const;
    // Accepts a bare integer (prime field, or a code) or a tuple "(c0,c1,...)".
    Fq parse(const std::string& token) const;
    std::string describe() const;

private:
    Field(unsigned p, unsigned f, std::vector<unsigned> irred);
    Fq add_slow(Fq a, Fq b) const;
    Fq mul_slow(Fq a, Fq b) const;
    const std::vector<Fq>& embedding(const Field& sub) const;

    unsigned p_;
    unsigned f_;
    std::uint32_t q_;
    std::vector<unsigned> irred_;
    std::vector<Fq> add_table_;
    std::vector<Fq> neg_;
    std::vector<Fq> exp_;  // length 2(q-1)
    std::vector<std::uint32_t> log_;

    mutable std::mutex embed_mutex_;
    mutable std::unordered_map<const Field*, std::vector<Fq>> embed_cache_;
};

FieldPtr make_field(unsigned p, unsigned f,
                    const std::optional<std::vector<unsigned>>& irred = std::nullopt);

// Value type wrapper for API-level arithmetic.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr field, Fq value);

    const FieldPtr& field() const { return field_; }
    Fq value() const { return value_; }
    std::vector<unsigned> coeffs() const { return field_->coeffs(value_); }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(std::int64_t k) const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    std::string str() const { return field_->format(value_); }

private:
    void check_same(const FieldElem& o) const;
    FieldPtr field_;
    Fq value_ = 0;
};

FieldElem frobenius(const FieldElem& x, std::int64_t i);
FieldElem norm_to_subfield(const FieldElem& x, const FieldPtr& sub);
bool is_square(const FieldElem& x);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// Smallest primitive prime divisor of a^k - 1, or nothing on the
// Zsigmondy exceptions.
std::optional<std::uint64_t> ppd(std::uint64_t a, unsigned k);
// a^k with overflow detection.
std::uint64_t checked_pow(std::uint64_t a, unsigned k);

}  // namespace spreadlab
