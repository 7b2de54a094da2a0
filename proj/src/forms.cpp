#include "spreadlab/forms.hpp"

#include <algorithm>

#include "spreadlab/error.hpp"

namespace spreadlab {

Fq FormSpec::bilinear(const Vec& u, const Vec& v) const {
    const Field& F = *field;
    Vec ug = gram.apply(u);
    Fq acc = 0;
    for (std::size_t i = 0; i < dim; ++i) acc = F.add(acc, F.mul(ug[i], v[i]));
    return acc;
}

Fq FormSpec::quadratic(const Vec& v) const {
    if (!quad) fail(Errc::FormMismatch, "form has no quadratic part");
    const Field& F = *field;
    Fq acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!v[i]) continue;
        for (std::size_t j = i; j < dim; ++j) acc = F.add(acc, F.mul(quad->at(i, j), F.mul(v[i], v[j])));
    }
    return acc;
}

void FormSpec::validate() const {
    const Field& F = *field;
    if (gram.dim() != dim) fail(Errc::FormMismatch, "Gram matrix dimension mismatch");
    if (kind == FormKind::Symplectic) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (gram.at(i, i) != 0) fail(Errc::FormMismatch, "symplectic Gram has nonzero diagonal");
            for (std::size_t j = 0; j < dim; ++j)
                if (gram.at(i, j) != F.neg(gram.at(j, i))) fail(Errc::FormMismatch, "symplectic Gram not skew");
        }
        if (!gram.inverse()) fail(Errc::FormMismatch, "symplectic Gram is singular");
    }
    if (kind == FormKind::Symmetric && gram != gram.transpose()) fail(Errc::FormMismatch, "Gram not symmetric");
    if (kind == FormKind::Quadratic) {
        if (!quad) fail(Errc::FormMismatch, "quadratic form without coefficients");
        MatF pol = *quad + quad->transpose();
        if (pol != gram) fail(Errc::FormMismatch, "polarization does not match the bilinear form");
    }
}

FormSpec standard_symplectic_form(unsigned m, FieldPtr F) {
    if (m < 1) fail(Errc::InvalidArgument, "symplectic rank must be positive");
    FormSpec s;
    s.kind = FormKind::Symplectic;
    s.dim = 2 * m;
    s.gram = MatF(F, s.dim);
    for (unsigned i = 0; i < m; ++i) {
        s.gram.at(2 * i, 2 * i + 1) = 1;
        s.gram.at(2 * i + 1, 2 * i) = F->neg(1);
    }
    s.field = std::move(F);
    return s;
}

FormSpec standard_orthogonal_form(unsigned n, FieldPtr F) {
    if (n % 2 == 0) fail(Errc::UnsupportedCase, "only odd-dimensional orthogonal forms are standard here");
    if (F->p() == 2) fail(Errc::EvenCharacteristic, "odd-dimensional orthogonal groups need odd q");
    MatF c(F, n);
    for (unsigned i = 0; i + 1 < n; i += 2) c.at(i, i + 1) = 1;
    c.at(n - 1, n - 1) = 1;
    return quadratic_form(std::move(F), c);
}

FormSpec quadratic_form(FieldPtr F, const MatF& coeffs) {
    FormSpec s;
    s.kind = FormKind::Quadratic;
    s.dim = coeffs.dim();
    MatF upper(F, s.dim);
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = i; j < s.dim; ++j) upper.at(i, j) = coeffs.at(i, j);
    s.quad = upper;
    s.gram = upper + upper.transpose();
    s.field = std::move(F);
    return s;
}

FormSpec bilinear_form(FormKind kind, const MatF& gram) {
    FormSpec s;
    s.kind = kind;
    s.dim = gram.dim();
    s.gram = gram;
    s.field = gram.field();
    s.validate();
    return s;
}

Fq similarity_tau(const MatF& g, const FormSpec& form) {
    auto t = semisimilarity_tau(SemilinearMap(g, 0), form);
    if (!t) fail(Errc::NotASimilarity, "matrix is not a similarity of the form");
    return *t;
}

std::optional<Fq> semisimilarity_tau(const SemilinearMap& g, const FormSpec& form) {
    const Field& F = *form.field;
    std::size_t n = form.dim;
    if (g.A.dim() != n) fail(Errc::DegreeMismatch, "map and form dimensions differ");
    std::vector<Vec> img(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        img[i] = g.apply(e);
    }
    std::optional<Fq> tau;
    auto check = [&](Fq lhs, Fq base) {
        Fq rhs_base = F.frobenius(base, g.frob);
        if (rhs_base == 0) return lhs == 0;
        Fq t = F.div(lhs, rhs_base);
        if (!tau) tau = t;
        return *tau == t;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!check(form.bilinear(img[i], img[j]), form.gram.at(i, j))) return std::nullopt;
    if (form.quad) {
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, 0);
            e[i] = 1;
            if (!check(form.quadratic(img[i]), form.quadratic(e))) return std::nullopt;
        }
    }
    if (!tau || *tau == 0) return std::nullopt;
    return tau;
}

bool preserves_form(const SemilinearMap& g, const FormSpec& form) {
    auto t = semisimilarity_tau(g, form);
    return t && *t == 1;
}

MatF symplectic_basis(const MatF& gram) {
    const Field& F = *gram.field();
    std::size_t n = gram.dim();
    auto B = [&](const Vec& u, const Vec& v) {
        Vec ug = gram.apply(u);
        Fq acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc = F.add(acc, F.mul(ug[i], v[i]));
        return acc;
    };
    std::vector<Vec> pool;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        pool.push_back(e);
    }
    std::vector<Vec> out;
    while (!pool.empty()) {
        std::size_t a = 0;
        while (a < pool.size() && std::all_of(pool[a].begin(), pool[a].end(), [](Fq x) { return x == 0; })) ++a;
        if (a == pool.size()) break;
        Vec e = pool[a];
        std::size_t b = 0;
        while (b < pool.size() && (b == a || B(e, pool[b]) == 0)) ++b;
        if (b == pool.size()) fail(Errc::FormMismatch, "form is degenerate");
        Vec f = pool[b];
        Fq s = F.inv(B(e, f));
        for (auto& x : f) x = F.mul(x, s);
        std::vector<Vec> rest;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (k == a || k == b) continue;
            Vec w = pool[k];
            Fq bwf = B(w, f), bwe = B(w, e);
            for (std::size_t i = 0; i < n; ++i) w[i] = F.add(F.sub(w[i], F.mul(bwf, e[i])), F.mul(bwe, f[i]));
            rest.push_back(w);
        }
        out.push_back(e);
        out.push_back(f);
        pool = std::move(rest);
    }
    if (out.size() != n) fail(Errc::FormMismatch, "form is degenerate");
    return MatF::from_rows(gram.field(), out);
}

}  // namespace spreadlab
