#pragma once

#include <optional>

#include "spreadlab/matrix.hpp"

namespace spreadlab {

enum class FormKind { Symplectic, Symmetric, Quadratic };

struct FormSpec {
    FormKind kind = FormKind::Symplectic;
    FieldPtr field;
    std::size_t dim = 0;
    MatF gram;                 // bilinear form, or the polarization of a quadratic form
    std::optional<MatF> quad;  // Q(v) = sum_{i<=j} quad(i,j) v_i v_j

    Fq bilinear(const Vec& u, const Vec& v) const;
    Fq quadratic(const Vec& v) const;
    void validate() const;
};

// Hyperbolic basis e1, f1, ..., em, fm with (ei, fi) = 1.
FormSpec standard_symplectic_form(unsigned m, FieldPtr F);
// Odd dimension n = 2m+1, odd q: Q = sum x_{e_i} x_{f_i} + x_n^2 with the
// anisotropic vector last.
FormSpec standard_orthogonal_form(unsigned n, FieldPtr F);
FormSpec quadratic_form(FieldPtr F, const MatF& coeffs);
FormSpec bilinear_form(FormKind kind, const MatF& gram);

// tau with (ug, vg) = tau (u, v) for all u, v.
Fq similarity_tau(const MatF& g, const FormSpec& form);
// tau with B(ug, vg) = tau B(u,v)^{p^i} (and the same for Q when present),
// or nothing when g is not a semisimilarity.
std::optional<Fq> semisimilarity_tau(const SemilinearMap& g, const FormSpec& form);
bool preserves_form(const SemilinearMap& g, const FormSpec& form);

// Rows of the returned matrix form a basis in which the alternating form
// has the standard hyperbolic Gram matrix.
MatF symplectic_basis(const MatF& gram);

}  // namespace spreadlab
