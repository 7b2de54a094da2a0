#include "spreadlab/ffield.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "spreadlab/error.hpp"
#include "spreadlab/poly.hpp"

namespace spreadlab {

namespace {

std::mutex registry_mutex;
std::map<std::tuple<unsigned, unsigned, std::vector<unsigned>>, FieldPtr>& registry() {
    static std::map<std::tuple<unsigned, unsigned, std::vector<unsigned>>, FieldPtr> r;
    return r;
}

Poly to_poly(const std::vector<unsigned>& c) {
    Poly out(c.begin(), c.end());
    poly_trim(out);
    return out;
}

// Enumerates monic degree-f polynomials over GF(p) in code order of their
// low coefficients and returns the first irreducible one.
std::vector<unsigned> least_irreducible(const Field& Fp, unsigned f) {
    std::uint64_t count = checked_pow(Fp.p(), f);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<unsigned> c(f + 1, 0);
        std::uint64_t v = code;
        for (unsigned i = 0; i < f; ++i) {
            c[i] = static_cast<unsigned>(v % Fp.p());
            v /= Fp.p();
        }
        c[f] = 1;
        if (poly_is_irreducible(Fp, to_poly(c))) return c;
    }
    fail(Errc::Internal, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
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

std::uint64_t checked_pow(std::uint64_t a, unsigned k) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= a;
        if (r > static_cast<unsigned __int128>(INT64_MAX)) fail(Errc::Overflow, "power exceeds 63 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> ppd(std::uint64_t a, unsigned k) {
    if (a < 2 || k < 2) fail(Errc::InvalidArgument, "ppd needs a >= 2 and k >= 2");
    std::uint64_t n = checked_pow(a, k) - 1;
    for (std::uint64_t r : prime_factors(n)) {
        bool primitive = true;
        std::uint64_t pw = 1;
        for (unsigned i = 1; i < k; ++i) {
            pw = static_cast<std::uint64_t>((static_cast<unsigned __int128>(pw) * a) % r);
            if (pw == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return r;
    }
    return std::nullopt;
}

Field::Field(unsigned p, unsigned f, std::vector<unsigned> irred)
    : p_(p), f_(f), q_(static_cast<std::uint32_t>(checked_pow(p, f))), irred_(std::move(irred)) {
    neg_.resize(q_);
    for (Fq a = 0; a < q_; ++a) {
        auto c = coeffs(a);
        for (auto& x : c) x = (p_ - x) % p_;
        neg_[a] = from_coeffs(c);
    }
    if (p_ != 2 && q_ <= 1024) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (Fq a = 0; a < q_; ++a)
            for (Fq b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_slow(a, b);
    }
    // Multiplicative structure from the smallest primitive element.
    std::uint32_t n = q_ - 1;
    auto pf = prime_factors(n);
    auto slow_pow = [&](Fq g, std::uint64_t e) {
        Fq r = 1;
        while (e) {
            if (e & 1) r = mul_slow(r, g);
            g = mul_slow(g, g);
            e >>= 1;
        }
        return r;
    };
    Fq gen = 1;
    if (q_ > 2) {
        for (Fq g = 2; g < q_; ++g) {
            bool ok = true;
            for (auto r : pf)
                if (slow_pow(g, n / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen = g;
                break;
            }
        }
    }
    exp_.resize(2 * static_cast<std::size_t>(n));
    log_.assign(q_, 0);
    Fq cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = cur;
        exp_[i + n] = cur;
        log_[cur] = i;
        cur = mul_slow(cur, gen);
    }
}

FieldPtr Field::make(unsigned p, unsigned f, const std::optional<std::vector<unsigned>>& irred) {
    if (!is_prime(p)) fail(Errc::NonPrime, std::to_string(p) + " is not prime");
    if (f < 1) fail(Errc::InvalidArgument, "field degree must be positive");
    if (checked_pow(p, f) > 65536) fail(Errc::BudgetExceeded, "field order above 2^16");
    std::vector<unsigned> poly;
    if (f == 1 && !irred) {
        poly = {0, 1};
    } else if (irred) {
        poly = *irred;
        if (poly.size() != f + 1 || poly[f] % p != 1)
            fail(Errc::ReduciblePolynomial, "defining polynomial must be monic of degree f");
        for (auto& c : poly) c %= p;
    }
    if (f > 1 || irred) {
        FieldPtr Fp = make(p, 1);
        if (poly.empty()) poly = least_irreducible(*Fp, f);
        if (!poly_is_irreducible(*Fp, to_poly(poly)))
            fail(Errc::ReduciblePolynomial, "defining polynomial is reducible over GF(" + std::to_string(p) + ")");
    }
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_tuple(p, f, poly);
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    FieldPtr field(new Field(p, f, poly));
    registry().emplace(key, field);
    return field;
}

FieldPtr make_field(unsigned p, unsigned f, const std::optional<std::vector<unsigned>>& irred) {
    return Field::make(p, f, irred);
}

Fq Field::add_slow(Fq a, Fq b) const {
    Fq out = 0, scale = 1;
    for (unsigned i = 0; i < f_; ++i) {
        out += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

Fq Field::mul_slow(Fq a, Fq b) const {
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<unsigned> prod(2 * f_, 0);
    for (unsigned i = 0; i < f_; ++i)
        for (unsigned j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    for (int d = static_cast<int>(2 * f_) - 1; d >= static_cast<int>(f_); --d) {
        unsigned c = prod[d];
        if (!c) continue;
        for (unsigned i = 0; i <= f_; ++i) {
            unsigned sub = (c * irred_[i]) % p_;
            prod[d - f_ + i] = (prod[d - f_ + i] + p_ - sub) % p_;
        }
    }
    prod.resize(f_);
    return from_coeffs(prod);
}

Fq Field::inv(Fq a) const {
    if (a == 0) fail(Errc::InvalidArgument, "division by zero in " + describe());
    std::uint32_t n = q_ - 1;
    return exp_[(n - log_[a]) % n];
}

Fq Field::pow(Fq a, std::int64_t k) const {
    if (a == 0) {
        if (k == 0) return 1;
        if (k < 0) fail(Errc::InvalidArgument, "zero to a negative power");
        return 0;
    }
    std::int64_t n = q_ - 1;
    std::int64_t e = ((static_cast<std::int64_t>(log_[a]) * (k % n)) % n + n) % n;
    return exp_[e];
}

Fq Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Fq>(r);
}

std::vector<unsigned> Field::coeffs(Fq a) const {
    std::vector<unsigned> c(f_);
    for (unsigned i = 0; i < f_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Fq Field::from_coeffs(const std::vector<unsigned>& c) const {
    Fq out = 0, scale = 1;
    for (unsigned i = 0; i < f_; ++i) {
        unsigned v = i < c.size() ? c[i] % p_ : 0;
        out += v * scale;
        scale *= p_;
    }
    return out;
}

std::uint32_t Field::log(Fq a) const {
    if (a == 0) fail(Errc::InvalidArgument, "log of zero");
    return log_[a];
}

Fq Field::exp(std::int64_t k) const {
    std::int64_t n = q_ - 1;
    return exp_[((k % n) + n) % n];
}

std::uint32_t Field::mult_order(Fq a) const {
    if (a == 0) fail(Errc::InvalidArgument, "order of zero");
    std::uint32_t n = q_ - 1, l = log_[a];
    std::uint32_t g = n, x = l;
    while (x) {
        std::uint32_t t = g % x;
        g = x;
        x = t;
    }
    return n / g;
}

Fq Field::frobenius(Fq a, std::int64_t i) const {
    if (a == 0) return 0;
    std::int64_t k = ((i % f_) + f_) % f_;
    std::uint64_t e = checked_pow(p_, static_cast<unsigned>(k));
    std::uint64_t n = q_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n)) % n];
}

bool Field::is_square(Fq a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
}

bool Field::has_subfield(const Field& sub) const { return sub.p_ == p_ && f_ % sub.f_ == 0; }

const std::vector<Fq>& Field::embedding(const Field& sub) const {
    if (!has_subfield(sub)) fail(Errc::NotASubfield, sub.describe() + " is not a subfield of " + describe());
    std::lock_guard<std::mutex> lock(embed_mutex_);
    auto it = embed_cache_.find(&sub);
    if (it != embed_cache_.end()) return it->second;
    // Smallest root of sub's defining polynomial.
    Poly P(sub.irred_.begin(), sub.irred_.end());
    Fq root = 0;
    bool found = false;
    for (Fq r = 0; r < q_ && !found; ++r) {
        if (poly_eval(*this, P, r) == 0) {
            root = r;
            found = true;
        }
    }
    if (!found) fail(Errc::Internal, "subfield polynomial has no root");
    std::vector<Fq> table(sub.q_);
    for (Fq y = 0; y < sub.q_; ++y) {
        auto c = sub.coeffs(y);
        Fq acc = 0, pw = 1;
        for (unsigned i = 0; i < sub.f_; ++i) {
            acc = add(acc, mul(from_int(c[i]), pw));
            pw = mul(pw, root);
        }
        table[y] = acc;
    }
    return embed_cache_.emplace(&sub, std::move(table)).first->second;
}

Fq Field::embed(Fq y, const Field& sub) const { return embedding(sub).at(y); }

std::optional<Fq> Field::restrict_to(Fq x, const Field& sub) const {
    const auto& table = embedding(sub);
    for (Fq y = 0; y < sub.q_; ++y)
        if (table[y] == x) return y;
    return std::nullopt;
}

Fq Field::norm(Fq x, const Field& sub) const {
    if (!has_subfield(sub)) fail(Errc::NotASubfield, sub.describe() + " is not a subfield of " + describe());
    if (x == 0) return 0;
    std::uint64_t e = (static_cast<std::uint64_t>(q_) - 1) / (sub.q_ - 1);
    Fq n = pow(x, static_cast<std::int64_t>(e));
    auto y = restrict_to(n, sub);
    if (!y) fail(Errc::Internal, "norm left the subfield");
    return *y;
}

Fq Field::trace(Fq x, const Field& sub) const {
    if (!has_subfield(sub)) fail(Errc::NotASubfield, sub.describe() + " is not a subfield of " + describe());
    Fq acc = 0;
    for (unsigned i = 0; i < f_ / sub.f_; ++i) acc = add(acc, frobenius(x, static_cast<std::int64_t>(i) * sub.f_));
    auto y = restrict_to(acc, sub);
    if (!y) fail(Errc::Internal, "trace left the subfield");
    return *y;
}

std::string Field::format(Fq a) const {
    if (f_ == 1) return std::to_string(a);
    std::ostringstream os;
    os << '(';
    auto c = coeffs(a);
    for (unsigned i = 0; i < f_; ++i) os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

Fq Field::parse(const std::string& token) const {
    if (!token.empty() && token.front() == '(') {
        if (token.back() != ')') fail(Errc::ParseError, "bad field element '" + token + "'");
        std::vector<unsigned> c;
        std::string body = token.substr(1, token.size() - 2), part;
        std::istringstream is(body);
        while (std::getline(is, part, ',')) {
            try {
                long v = std::stol(part);
                if (v < 0 || static_cast<unsigned long>(v) >= p_) throw std::out_of_range("coefficient");
                c.push_back(static_cast<unsigned>(v));
            } catch (const std::exception&) {
                fail(Errc::ParseError, "bad coefficient in '" + token + "'");
            }
        }
        if (c.size() != f_) fail(Errc::ParseError, "expected " + std::to_string(f_) + " coefficients in '" + token + "'");
        return from_coeffs(c);
    }
    try {
        std::size_t used = 0;
        long v = std::stol(token, &used);
        if (used != token.size() || v < 0 || static_cast<unsigned long>(v) >= q_) throw std::out_of_range("element");
        return static_cast<Fq>(v);
    } catch (const std::exception&) {
        fail(Errc::ParseError, "bad field element '" + token + "'");
    }
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    return os.str();
}

FieldElem::FieldElem(FieldPtr field, Fq value) : field_(std::move(field)), value_(value) {
    if (!field_ || value_ >= field_->q()) fail(Errc::InvalidArgument, "field element out of range");
}

void FieldElem::check_same(const FieldElem& o) const {
    if (field_ != o.field_) fail(Errc::InvalidArgument, "elements from different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(o);
    return {field_, field_->add(value_, o.value_)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same(o);
    return {field_, field_->sub(value_, o.value_)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(o);
    return {field_, field_->mul(value_, o.value_)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
    check_same(o);
    return {field_, field_->div(value_, o.value_)};
}
FieldElem FieldElem::operator-() const { return {field_, field_->neg(value_)}; }
FieldElem FieldElem::inverse() const { return {field_, field_->inv(value_)}; }
FieldElem FieldElem::pow(std::int64_t k) const { return {field_, field_->pow(value_, k)}; }
bool FieldElem::operator==(const FieldElem& o) const { return field_ == o.field_ && value_ == o.value_; }

FieldElem frobenius(const FieldElem& x, std::int64_t i) { return {x.field(), x.field()->frobenius(x.value(), i)}; }

FieldElem norm_to_subfield(const FieldElem& x, const FieldPtr& sub) {
    return {sub, x.field()->norm(x.value(), *sub)};
}

bool is_square(const FieldElem& x) { return x.field()->is_square(x.value()); }

}  // namespace spreadlab
