#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistaff/error.hpp"
#include "twistaff/matrix.hpp"
#include "twistaff/report.hpp"

namespace twistaff {

struct StructureEntry {
    size_t i, j, k;
    Scalar c;
};

struct FormEntry {
    size_t i, j;
    Scalar c;
};

enum class LieCheck { antisymmetry, jacobi, form_symmetry, form_invariance, form_degenerate };

class LieValidationError : public Error {
public:
    LieValidationError(LieCheck check, const std::string& what)
        : Error(ErrorKind::lie_invalid, what), check_(check) {}
    LieCheck check() const { return check_; }

private:
    LieCheck check_;
};

using SparseTerms = std::vector<std::pair<size_t, Scalar>>;

class LieAlgebra {
public:
    size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    // [a_i, a_j] = sum c a_k
    const SparseTerms& bracket_basis(size_t i, size_t j) const { return c_[i * dim() + j]; }
    const Matrix& form() const { return form_; }
    // Sum_k D[i][k] B[k][j] = delta_ij; throws when the form is degenerate
    const Matrix& dual() const;
    std::optional<mpq_class> dual_coxeter() const { return hv_; }

    Vector bracket(const Vector& x, const Vector& y) const;
    Scalar pairing(const Vector& x, const Vector& y) const;
    Matrix ad(const Vector& x) const;
    Vector basis_vector(size_t i) const;

    friend LieAlgebra lie_from_structure(std::vector<std::string>, const std::vector<StructureEntry>&,
                                         const std::vector<FormEntry>&, bool);

private:
    std::vector<std::string> labels_;
    std::vector<SparseTerms> c_;
    Matrix form_;
    std::optional<Matrix> dual_;
    std::optional<mpq_class> hv_;
};

// Builds the algebra from sparse tables. A pair (i,j) absent from the table
// while (j,i) is present is filled in by antisymmetry (likewise symmetric
// completion of the form). With validate set, the first failed invariant is
// thrown as LieValidationError.
LieAlgebra lie_from_structure(std::vector<std::string> labels, const std::vector<StructureEntry>& bracket,
                              const std::vector<FormEntry>& form, bool validate = true);

LieAlgebra lie_sl(size_t n);

// One entry per invariant: antisymmetry, jacobi, form-symmetric, form-invariant,
// form-nondegenerate, dual-basis, dual-coxeter.
Report lie_checks(const LieAlgebra& L);

Matrix dual_basis(const LieAlgebra& L);
mpq_class dual_coxeter(const LieAlgebra& L);
Matrix killing_form(const LieAlgebra& L);

}  // namespace twistaff
