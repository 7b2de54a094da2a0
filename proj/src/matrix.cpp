#include "spreadlab/matrix.hpp"

#include <sstream>

#include "spreadlab/error.hpp"

namespace spreadlab {

MatF::MatF(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n), a_(n * n, 0) {}

MatF MatF::identity(FieldPtr field, std::size_t n) { return scalar(std::move(field), n, 1); }

MatF MatF::scalar(FieldPtr field, std::size_t n, Fq c) {
    MatF m(std::move(field), n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

MatF MatF::from_rows(FieldPtr field, const std::vector<Vec>& rows) {
    MatF m(std::move(field), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) fail(Errc::InvalidArgument, "matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec MatF::row(std::size_t i) const { return Vec(a_.begin() + i * n_, a_.begin() + (i + 1) * n_); }

MatF MatF::operator*(const MatF& o) const {
    if (o.n_ != n_ || o.field_ != field_) fail(Errc::DegreeMismatch, "matrix product of incompatible matrices");
    const Field& F = *field_;
    MatF r(field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            Fq c = at(i, k);
            if (!c) continue;
            for (std::size_t j = 0; j < n_; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(c, o.at(k, j)));
        }
    return r;
}

MatF MatF::operator+(const MatF& o) const {
    MatF r(field_, n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], o.a_[i]);
    return r;
}

MatF MatF::operator-(const MatF& o) const {
    MatF r(field_, n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->sub(a_[i], o.a_[i]);
    return r;
}

MatF MatF::scaled(Fq c) const {
    MatF r(field_, n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->mul(a_[i], c);
    return r;
}

MatF MatF::transpose() const {
    MatF r(field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
}

MatF MatF::frob(std::int64_t i) const {
    MatF r(field_, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_->frobenius(a_[k], i);
    return r;
}

std::optional<MatF> MatF::inverse() const {
    const Field& F = *field_;
    MatF m = *this, inv = identity(field_, n_);
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = c;
        while (piv < n_ && m.at(piv, c) == 0) ++piv;
        if (piv == n_) return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < n_; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        Fq s = F.inv(m.at(c, c));
        for (std::size_t j = 0; j < n_; ++j) {
            m.at(c, j) = F.mul(m.at(c, j), s);
            inv.at(c, j) = F.mul(inv.at(c, j), s);
        }
        for (std::size_t r = 0; r < n_; ++r) {
            if (r == c || m.at(r, c) == 0) continue;
            Fq t = m.at(r, c);
            for (std::size_t j = 0; j < n_; ++j) {
                m.at(r, j) = F.sub(m.at(r, j), F.mul(t, m.at(c, j)));
                inv.at(r, j) = F.sub(inv.at(r, j), F.mul(t, inv.at(c, j)));
            }
        }
    }
    return inv;
}

MatF MatF::inv() const {
    auto r = inverse();
    if (!r) fail(Errc::InvalidArgument, "singular matrix");
    return *r;
}

MatF MatF::pow(std::int64_t k) const {
    MatF base = k < 0 ? inv() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    MatF result = identity(field_, n_);
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Fq MatF::det() const {
    const Field& F = *field_;
    MatF m = *this;
    Fq d = 1;
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = c;
        while (piv < n_ && m.at(piv, c) == 0) ++piv;
        if (piv == n_) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n_; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = F.neg(d);
        }
        d = F.mul(d, m.at(c, c));
        Fq s = F.inv(m.at(c, c));
        for (std::size_t r = c + 1; r < n_; ++r) {
            if (m.at(r, c) == 0) continue;
            Fq t = F.mul(m.at(r, c), s);
            for (std::size_t j = c; j < n_; ++j) m.at(r, j) = F.sub(m.at(r, j), F.mul(t, m.at(c, j)));
        }
    }
    return d;
}

std::vector<Vec> rref(const Field& F, std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    std::size_t ncols = rows[0].size(), r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        Fq s = F.inv(rows[r][c]);
        for (auto& x : rows[r]) x = F.mul(x, s);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][c] == 0) continue;
            Fq t = rows[k][c];
            for (std::size_t j = 0; j < ncols; ++j) rows[k][j] = F.sub(rows[k][j], F.mul(t, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::size_t MatF::rank() const {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n_; ++i) rows.push_back(row(i));
    return rref(*field_, rows).size();
}

bool MatF::is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool MatF::is_scalar() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i == j ? at(i, j) != at(0, 0) : at(i, j) != 0) return false;
    return n_ == 0 || at(0, 0) != 0;
}

Vec MatF::apply(const Vec& v) const {
    const Field& F = *field_;
    Vec r(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
        if (!v[k]) continue;
        for (std::size_t j = 0; j < n_; ++j) r[j] = F.add(r[j], F.mul(v[k], at(k, j)));
    }
    return r;
}

Poly MatF::charpoly() const {
    const Field& F = *field_;
    const std::size_t n = n_;
    MatF H = *this;
    // Reduce to upper Hessenberg form by similarity transforms.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && H.at(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
        }
        Fq s = F.inv(H.at(j + 1, j));
        for (std::size_t k = j + 2; k < n; ++k) {
            Fq c = F.mul(H.at(k, j), s);
            if (!c) continue;
            for (std::size_t col = 0; col < n; ++col) H.at(k, col) = F.sub(H.at(k, col), F.mul(c, H.at(j + 1, col)));
            for (std::size_t r = 0; r < n; ++r) H.at(r, j + 1) = F.add(H.at(r, j + 1), F.mul(c, H.at(r, k)));
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{m=i+1}^{k} h_{m,m-1}) p_{i-1}  (1-indexed)
    std::vector<Poly> p(n + 1);
    p[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        Poly lin{F.neg(H.at(k - 1, k - 1)), 1};
        Poly acc = poly_mul(F, lin, p[k - 1]);
        Fq prod = 1;
        for (std::size_t i = k - 1; i >= 1; --i) {
            prod = F.mul(prod, H.at(i, i - 1));
            Fq coef = F.mul(H.at(i - 1, k - 1), prod);
            if (coef) acc = poly_sub(F, acc, poly_scale(F, p[i - 1], coef));
            if (prod == 0) break;
        }
        p[k] = acc;
    }
    return p[n];
}

std::uint64_t MatF::order(std::uint64_t limit) const {
    if (!inverse()) fail(Errc::InvalidArgument, "singular matrix has no order");
    MatF cur = *this;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (cur.is_identity()) return k;
        cur = cur * *this;
    }
    fail(Errc::BudgetExceeded, "matrix order above limit");
}

std::uint64_t MatF::projective_order(std::uint64_t limit) const {
    MatF cur = *this;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (cur.is_scalar()) return k;
        cur = cur * *this;
    }
    fail(Errc::BudgetExceeded, "matrix order above limit");
}

std::string MatF::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < n_; ++j) os << (j ? " " : "") << field_->format(at(i, j));
    }
    os << "]";
    return os.str();
}

MatF block_diag(const std::vector<MatF>& blocks) {
    if (blocks.empty()) fail(Errc::InvalidArgument, "no blocks");
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.dim();
    MatF r(blocks[0].field(), n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.dim();
    }
    return r;
}

MatF poly_at(const Poly& p, const MatF& A) {
    MatF r(A.field(), A.dim());
    for (std::size_t i = p.size(); i-- > 0;) r = r * A + MatF::scalar(A.field(), A.dim(), p[i]);
    return r;
}

std::size_t nullity(const MatF& A) { return A.dim() - A.rank(); }

std::optional<Vec> solve_left(const MatF& A, const Vec& b) {
    // xA = b  <=>  A^T x^T = b^T; eliminate on the augmented transpose.
    const Field& F = *A.field();
    std::size_t n = A.dim();
    std::vector<Vec> rows(n, Vec(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = A.at(j, i);
        rows[i][n] = b[i];
    }
    auto red = rref(F, rows);
    Vec x(n, 0);
    for (const auto& r : red) {
        std::size_t lead = 0;
        while (lead <= n && r[lead] == 0) ++lead;
        if (lead == n) return std::nullopt;
        x[lead] = r[n];
    }
    // Verify (free variables were set to zero).
    if (A.apply(x) != b) return std::nullopt;
    return x;
}

SemilinearMap::SemilinearMap(MatF a, std::int64_t i) : A(std::move(a)) {
    std::int64_t f = A.field()->f();
    frob = ((i % f) + f) % f;
}

SemilinearMap SemilinearMap::operator*(const SemilinearMap& o) const {
    return SemilinearMap(A * o.A.frob(-frob), frob + o.frob);
}

SemilinearMap SemilinearMap::inverse() const { return SemilinearMap(A.inv().frob(frob), -frob); }

SemilinearMap SemilinearMap::pow(std::int64_t k) const {
    SemilinearMap base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    SemilinearMap result = identity(A.field(), A.dim());
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Vec SemilinearMap::apply(const Vec& v) const {
    Vec w = A.apply(v);
    if (frob)
        for (auto& x : w) x = A.field()->frobenius(x, frob);
    return w;
}

std::uint64_t SemilinearMap::order(std::uint64_t limit) const {
    SemilinearMap cur = *this;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (cur.frob == 0 && cur.A.is_identity()) return k;
        cur = cur * *this;
    }
    fail(Errc::BudgetExceeded, "semilinear order above limit");
}

SemilinearMap SemilinearMap::in_basis(const MatF& M) const {
    return SemilinearMap(M * A * M.inv().frob(-frob), frob);
}

}  // namespace spreadlab
