#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ila/scalar.hpp"

namespace ila {

// Dense matrix of exact scalars.  All entries share one field mode.  Values are
// immutable in spirit: algorithms below return fresh matrices instead of
// mutating their inputs, so instances can be shared freely across threads.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0), mode_(FieldMode::Rational) {}
    ExactMatrix(FieldMode mode, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, Scalar(mode)) {}

    static ExactMatrix identity(FieldMode mode, std::size_t n);
    static ExactMatrix from_rows(FieldMode mode, const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldMode mode() const { return mode_; }

    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::vector<Scalar> row(std::size_t i) const;
    void swap_rows(std::size_t a, std::size_t b);
    bool is_zero() const;

    ExactMatrix transpose() const;
    ExactMatrix conj_transpose() const;
    ExactMatrix conj_entrywise() const;
    // Keeps the named columns, in the given order.
    ExactMatrix select_columns(const std::vector<std::size_t>& cols) const;
    ExactMatrix negate_columns(const std::vector<std::size_t>& cols) const;
    // Stacks rows of b below this (column counts must agree).
    ExactMatrix vstack(const ExactMatrix& b) const;

    bool operator==(const ExactMatrix& rhs) const;
    bool operator!=(const ExactMatrix& rhs) const { return !(*this == rhs); }

    std::string str() const;  // debugging aid

  private:
    std::size_t rows_, cols_;
    FieldMode mode_;
    std::vector<Scalar> data_;
};

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
std::vector<Scalar> matvec(const ExactMatrix& a, const std::vector<Scalar>& x);

// Bilinear pairing sum_k x_k * y_k.
Scalar dot(const std::vector<Scalar>& x, const std::vector<Scalar>& y);
// Sesquilinear pairing sum_k x_k * conj(y_k).
Scalar dot_conj(const std::vector<Scalar>& x, const std::vector<Scalar>& y);

struct RrefResult {
    ExactMatrix matrix;
    std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
    std::size_t rank = 0;
};

// Reduced row-echelon form.  Forward elimination is fraction-free
// (Bareiss-style, after clearing each row's denominators) so intermediate
// numerators stay minors of the input; a rational normalization pass then
// produces the canonical RREF.  Pivot choice is the first nonzero entry in
// column order, which makes the output deterministic.
RrefResult rref(const ExactMatrix& a);

// Rows form a basis of { x : a x = 0 }; row count = cols - rank.
ExactMatrix nullspace_basis(const ExactMatrix& a);

struct SolveReport {
    enum class Kind { Unique, None, Affine };
    Kind kind = Kind::None;
    std::optional<std::vector<Scalar>> particular;  // absent iff None
    ExactMatrix nullspace;                          // nonempty iff Affine
};

const char* to_string(SolveReport::Kind kind);

// Classifies and solves a x = b exactly.
SolveReport solve_classified(const ExactMatrix& a, const std::vector<Scalar>& b);

// Exact semidefiniteness of a symmetric (Hermitian in Gaussian mode) matrix,
// decided without square roots: pivot on positive diagonal entries and form
// Schur complements; once no nonzero diagonal remains, any surviving
// off-diagonal entry exhibits a negative 2x2 principal minor.  Throws
// ScalarError if the matrix is not Hermitian.
bool is_positive_semidefinite(const ExactMatrix& g);
bool is_positive_definite(const ExactMatrix& g);

}  // namespace ila
