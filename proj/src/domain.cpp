#include "spreadlab/domain.hpp"

#include "spreadlab/error.hpp"

namespace spreadlab {

VectorDomain::VectorDomain(FieldPtr field, std::size_t n, DomainKind kind)
    : field_(std::move(field)), n_(n), kind_(kind) {
    std::uint64_t total = checked_pow(field_->q(), static_cast<unsigned>(n_));
    if (total > (1u << 24)) fail(Errc::BudgetExceeded, "vector space too large for a point domain");
    lookup_.assign(total, -1);
    Vec v(n_, 0);
    for (std::uint64_t c = 1; c < total; ++c) {
        std::uint64_t x = c;
        for (std::size_t i = 0; i < n_; ++i) {
            v[i] = static_cast<Fq>(x % field_->q());
            x /= field_->q();
        }
        if (kind_ == DomainKind::Projective) {
            std::size_t k = 0;
            while (v[k] == 0) ++k;
            if (v[k] != 1) continue;
        }
        lookup_[c] = static_cast<std::int32_t>(points_.size());
        points_.push_back(v);
    }
    if (points_.size() > 65535) fail(Errc::BudgetExceeded, "point domain above degree 65535");
}

std::uint64_t VectorDomain::code(const Vec& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = n_; i-- > 0;) c = c * field_->q() + v[i];
    return c;
}

Vec VectorDomain::normalize(Vec v) const {
    if (kind_ == DomainKind::Vectors) return v;
    std::size_t k = 0;
    while (k < n_ && v[k] == 0) ++k;
    if (k == n_) fail(Errc::InvalidArgument, "zero vector has no point");
    Fq s = field_->inv(v[k]);
    for (auto& x : v) x = field_->mul(x, s);
    return v;
}

std::uint32_t VectorDomain::index_of(const Vec& v) const {
    std::int32_t i = lookup_[code(normalize(v))];
    if (i < 0) fail(Errc::InvalidArgument, "vector outside the domain");
    return static_cast<std::uint32_t>(i);
}

Perm VectorDomain::perm_of(const SemilinearMap& g) const {
    if (g.A.dim() != n_ || g.A.field() != field_) fail(Errc::DegreeMismatch, "map does not act on this domain");
    std::vector<Point> img(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        Vec w = g.apply(points_[i]);
        bool zero = true;
        for (Fq x : w) zero = zero && x == 0;
        if (zero) fail(Errc::InvalidArgument, "singular map has no permutation");
        img[i] = static_cast<Point>(index_of(w));
    }
    return Perm(std::move(img));
}

std::optional<SemilinearMap> VectorDomain::map_of(const Perm& p) const {
    if (p.degree() != points_.size()) fail(Errc::DegreeMismatch, "permutation does not act on this domain");
    const Field& F = *field_;
    auto unit = [&](std::size_t j) {
        Vec e(n_, 0);
        e[j] = 1;
        return e;
    };
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(F.f()); ++i) {
        std::vector<Vec> rows(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            Vec w = points_[p[index_of(unit(j))]];
            for (auto& x : w) x = F.frobenius(x, -i);
            rows[j] = w;
        }
        if (kind_ == DomainKind::Projective) {
            Vec all(n_, 1);
            Vec u = points_[p[index_of(all)]];
            for (auto& x : u) x = F.frobenius(x, -i);
            MatF W = MatF::from_rows(field_, rows);
            auto c = solve_left(W, u);
            if (!c) continue;
            bool ok = true;
            for (std::size_t j = 0; j < n_ && ok; ++j) {
                if ((*c)[j] == 0) ok = false;
                for (auto& x : rows[j]) x = F.mul(x, (*c)[j]);
            }
            if (!ok) continue;
        }
        MatF A = MatF::from_rows(field_, rows);
        if (!A.inverse()) continue;
        SemilinearMap g(A, i);
        if (perm_of(g) == p) return g;
    }
    return std::nullopt;
}

}  // namespace spreadlab
