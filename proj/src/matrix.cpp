#include "ila/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace ila {

ExactMatrix ExactMatrix::identity(FieldMode mode, std::size_t n) {
    ExactMatrix m(mode, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(mode);
    return m;
}

ExactMatrix ExactMatrix::from_rows(FieldMode mode,
                                   const std::vector<std::vector<Scalar>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(mode, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ScalarError("ragged row list");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Scalar> ExactMatrix::row(std::size_t i) const {
    return std::vector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void ExactMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

bool ExactMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(mode_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

ExactMatrix ExactMatrix::conj_transpose() const {
    ExactMatrix t(mode_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j).conj();
    return t;
}

ExactMatrix ExactMatrix::conj_entrywise() const {
    ExactMatrix t(*this);
    for (auto& s : t.data_) s = s.conj();
    return t;
}

ExactMatrix ExactMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    ExactMatrix t(mode_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) t.at(i, j) = at(i, cols[j]);
    return t;
}

ExactMatrix ExactMatrix::negate_columns(const std::vector<std::size_t>& cols) const {
    ExactMatrix t(*this);
    for (std::size_t j : cols)
        for (std::size_t i = 0; i < rows_; ++i) t.at(i, j) = -t.at(i, j);
    return t;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& b) const {
    if (rows_ == 0) return b;
    if (b.rows_ == 0) return *this;
    if (cols_ != b.cols_) throw ScalarError("vstack: column mismatch");
    ExactMatrix t(mode_, rows_ + b.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(rows_ + i, j) = b.at(i, j);
    return t;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && mode_ == rhs.mode_ &&
           data_ == rhs.data_;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows()) throw ScalarError("multiply: shape mismatch");
    ExactMatrix c(a.mode(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

std::vector<Scalar> matvec(const ExactMatrix& a, const std::vector<Scalar>& x) {
    if (a.cols() != x.size()) throw ScalarError("matvec: shape mismatch");
    std::vector<Scalar> y(a.rows(), Scalar(a.mode()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a.at(i, j) * x[j];
    return y;
}

Scalar dot(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (x.size() != y.size()) throw ScalarError("dot: length mismatch");
    Scalar s = x.empty() ? Scalar() : Scalar(x.front().mode());
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

Scalar dot_conj(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (x.size() != y.size()) throw ScalarError("dot_conj: length mismatch");
    Scalar s = x.empty() ? Scalar() : Scalar(x.front().mode());
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k].conj();
    return s;
}

namespace {

// Multiplies each row by the lcm of its denominators (real and imaginary
// parts), an invertible row scaling, so that the Bareiss pass below divides
// exactly in the Gaussian integers.
void clear_denominators(ExactMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class lcm_val = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_lcm(lcm_val.get_mpz_t(), lcm_val.get_mpz_t(),
                    m.at(i, j).real().get_den().get_mpz_t());
            mpz_lcm(lcm_val.get_mpz_t(), lcm_val.get_mpz_t(),
                    m.at(i, j).imag().get_den().get_mpz_t());
        }
        if (lcm_val == 1) continue;
        Scalar f(m.mode(), mpq_class(lcm_val));
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= f;
    }
}

}  // namespace

RrefResult rref(const ExactMatrix& a) {
    RrefResult result;
    if (a.rows() == 0 || a.cols() == 0) {
        result.matrix = ExactMatrix(a.mode(), 0, a.cols());
        return result;
    }
    result.matrix = a;
    ExactMatrix& m = result.matrix;

    clear_denominators(m);

    // Fraction-free forward elimination (one-step Bareiss with column skipping):
    // every division by the previous pivot is exact because the entries are
    // determinants of integer submatrices of the cleared input.
    Scalar prev = Scalar::one(m.mode());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t k = r;
        while (k < m.rows() && m.at(k, c).is_zero()) ++k;
        if (k == m.rows()) continue;
        m.swap_rows(r, k);
        const Scalar pivot = m.at(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Scalar lead = m.at(i, c);
            for (std::size_t j = c + 1; j < m.cols(); ++j)
                m.at(i, j) = (pivot * m.at(i, j) - lead * m.at(r, j)) / prev;
            m.at(i, c) = Scalar(m.mode());
        }
        prev = pivot;
        result.pivots.push_back(c);
        ++r;
    }
    result.rank = result.pivots.size();

    // Rational normalization to canonical RREF.
    for (std::size_t p = result.rank; p-- > 0;) {
        const std::size_t pc = result.pivots[p];
        const Scalar inv = m.at(p, pc);
        for (std::size_t j = pc; j < m.cols(); ++j) m.at(p, j) /= inv;
        for (std::size_t i = 0; i < p; ++i) {
            const Scalar f = m.at(i, pc);
            if (f.is_zero()) continue;
            for (std::size_t j = pc; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(p, j);
        }
    }

    // Drop the all-zero tail rows so canonical reps are full row rank.
    ExactMatrix trimmed(m.mode(), result.rank, m.cols());
    for (std::size_t i = 0; i < result.rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) trimmed.at(i, j) = m.at(i, j);
    result.matrix = std::move(trimmed);
    return result;
}

namespace {

ExactMatrix nullspace_from_rref(const RrefResult& r, std::size_t cols, FieldMode mode) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    ExactMatrix basis(mode, free_cols.size(), cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        basis.at(k, f) = Scalar::one(mode);
        for (std::size_t p = 0; p < r.pivots.size(); ++p)
            basis.at(k, r.pivots[p]) = -r.matrix.at(p, f);
    }
    return basis;
}

}  // namespace

ExactMatrix nullspace_basis(const ExactMatrix& a) {
    return nullspace_from_rref(rref(a), a.cols(), a.mode());
}

const char* to_string(SolveReport::Kind kind) {
    switch (kind) {
        case SolveReport::Kind::Unique: return "unique";
        case SolveReport::Kind::None: return "none";
        case SolveReport::Kind::Affine: return "affine";
    }
    return "?";
}

SolveReport solve_classified(const ExactMatrix& a, const std::vector<Scalar>& b) {
    if (a.rows() != b.size()) throw ScalarError("solve_classified: shape mismatch");
    const FieldMode mode = a.mode();
    ExactMatrix aug(mode, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(aug);

    SolveReport report;
    report.nullspace = ExactMatrix(mode, 0, a.cols());
    if (!r.pivots.empty() && r.pivots.back() == a.cols()) {
        report.kind = SolveReport::Kind::None;
        return report;
    }
    std::vector<Scalar> x(a.cols(), Scalar(mode));
    for (std::size_t p = 0; p < r.pivots.size(); ++p) x[r.pivots[p]] = r.matrix.at(p, a.cols());
    report.particular = std::move(x);
    if (r.rank == a.cols()) {
        report.kind = SolveReport::Kind::Unique;
        return report;
    }
    report.kind = SolveReport::Kind::Affine;
    // The pivot columns of [A|b] (none in the b column here) are those of A.
    RrefResult restricted;
    restricted.pivots = r.pivots;
    restricted.matrix = r.matrix;
    report.nullspace = nullspace_from_rref(restricted, a.cols(), mode);
    return report;
}

namespace {

void check_hermitian(const ExactMatrix& g) {
    if (g.rows() != g.cols()) throw ScalarError("definiteness: matrix not square");
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i; j < g.cols(); ++j)
            if (g.at(i, j) != g.at(j, i).conj())
                throw ScalarError("definiteness: matrix not Hermitian");
}

struct LdlOutcome {
    bool semidefinite = false;
    std::size_t positive_pivots = 0;
};

LdlOutcome ldl_scan(ExactMatrix g) {
    check_hermitian(g);
    const std::size_t n = g.rows();
    std::vector<bool> active(n, true);
    LdlOutcome out;
    for (;;) {
        std::size_t pivot = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k]) continue;
            const int s = g.at(k, k).real_sign();
            if (s < 0) return out;  // negative diagonal: not PSD
            if (s > 0 && pivot == n) pivot = k;
        }
        if (pivot == n) {
            // No positive diagonal remains; PSD iff the active block is zero
            // (a nonzero off-diagonal entry over zero diagonals is a negative
            // 2x2 principal minor).
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (active[i] && active[j] && !g.at(i, j).is_zero()) return out;
            out.semidefinite = true;
            return out;
        }
        const Scalar d = g.at(pivot, pivot);
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i] || i == pivot || g.at(i, pivot).is_zero()) continue;
            const Scalar f = g.at(i, pivot) / d;
            for (std::size_t j = 0; j < n; ++j) {
                if (!active[j] || j == pivot) continue;
                g.at(i, j) -= f * g.at(pivot, j);
            }
        }
        active[pivot] = false;
        ++out.positive_pivots;
    }
}

}  // namespace

bool is_positive_semidefinite(const ExactMatrix& g) { return ldl_scan(g).semidefinite; }

bool is_positive_definite(const ExactMatrix& g) {
    const LdlOutcome out = ldl_scan(g);
    return out.semidefinite && out.positive_pivots == g.rows();
}

}  // namespace ila
