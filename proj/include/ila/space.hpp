#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ila/label.hpp"
#include "ila/matrix.hpp"

namespace ila {

class SpaceError : public std::runtime_error {
  public:
    explicit SpaceError(const std::string& what) : std::runtime_error(what) {}
};

// A vector subspace of F^X for a finite label set X.  The representative
// matrix is kept in canonical reduced row-echelon form with the columns in
// sorted label order, so two objects describe the same subspace iff they
// compare equal member-for-member.
class IndexedVectorSpace {
  public:
    IndexedVectorSpace() = default;

    // Rows of `generators` are coordinate vectors over `labels` (any order,
    // duplicates rejected); the result spans them.
    static IndexedVectorSpace span(FieldMode mode, LabelList labels,
                                   const std::vector<std::vector<Scalar>>& generators);
    static IndexedVectorSpace from_rep(FieldMode mode, LabelList labels, ExactMatrix rep);
    static IndexedVectorSpace zero(FieldMode mode, LabelList labels);
    static IndexedVectorSpace full(FieldMode mode, LabelList labels);

    const LabelList& labels() const { return labels_; }
    const ExactMatrix& rep() const { return rep_; }
    FieldMode mode() const { return mode_; }
    std::size_t dim() const { return rep_.rows(); }

    bool has_label(const Label& l) const;
    std::size_t index_of(const Label& l) const;

    bool operator==(const IndexedVectorSpace& rhs) const {
        return labels_ == rhs.labels_ && rep_ == rhs.rep_;
    }
    bool operator!=(const IndexedVectorSpace& rhs) const { return !(*this == rhs); }

  private:
    LabelList labels_;  // sorted ascending, unique
    ExactMatrix rep_;   // canonical RREF over labels_, full row rank
    FieldMode mode_ = FieldMode::Rational;
};

// Coordinates are ordered like the space's (sorted) label list.
bool member(const IndexedVectorSpace& v, const std::vector<Scalar>& x);

IndexedVectorSpace perp(const IndexedVectorSpace& v);  // bilinear dual
IndexedVectorSpace star(const IndexedVectorSpace& v);  // sesquilinear dual

IndexedVectorSpace restrict_to(const IndexedVectorSpace& v, const LabelList& t);
IndexedVectorSpace contract_to(const IndexedVectorSpace& v, const LabelList& t);

IndexedVectorSpace ext_sum(const IndexedVectorSpace& v, const IndexedVectorSpace& w);
IndexedVectorSpace ext_intersect(const IndexedVectorSpace& v, const IndexedVectorSpace& w);

// Matched composition: pairs of members agreeing on the common labels, with
// the common coordinates dropped.  Skewed composition negates the second
// argument's common coordinates first.
IndexedVectorSpace matched(const IndexedVectorSpace& a, const IndexedVectorSpace& b);
IndexedVectorSpace skewed(const IndexedVectorSpace& a, const IndexedVectorSpace& b);

IndexedVectorSpace signflip(const IndexedVectorSpace& v, const LabelList& y);
IndexedVectorSpace relabel(const IndexedVectorSpace& v,
                           const std::function<Label(const Label&)>& map);

// Affine flat (coset of a vector space) or the explicit empty set.  The stored
// offset is the canonical representative: the unique member with zero
// coordinates at the translate's pivot columns.
class IndexedAffineSpace {
  public:
    IndexedAffineSpace() = default;

    static IndexedAffineSpace make(std::vector<Scalar> offset, IndexedVectorSpace translate);
    static IndexedAffineSpace make_void(FieldMode mode, LabelList labels);
    static IndexedAffineSpace from_space(IndexedVectorSpace translate);
    static IndexedAffineSpace point(FieldMode mode, LabelList labels, std::vector<Scalar> coords);
    // Solution set of c x = d over `labels` (possibly VOID).
    static IndexedAffineSpace from_equations(FieldMode mode, LabelList labels,
                                             const ExactMatrix& c, const std::vector<Scalar>& d);

    bool is_void() const { return void_; }
    const IndexedVectorSpace& translate() const { return translate_; }
    const std::vector<Scalar>& offset() const { return offset_; }
    const LabelList& labels() const { return translate_.labels(); }
    FieldMode mode() const { return translate_.mode(); }

    // Equation form (c, d): the set equals { x : c x = d }; c is the canonical
    // representative matrix of the translate's bilinear dual.
    std::pair<ExactMatrix, std::vector<Scalar>> equations() const;

    bool operator==(const IndexedAffineSpace& rhs) const;
    bool operator!=(const IndexedAffineSpace& rhs) const { return !(*this == rhs); }

  private:
    IndexedVectorSpace translate_;
    std::vector<Scalar> offset_;
    bool void_ = false;
};

bool member(const IndexedAffineSpace& a, const std::vector<Scalar>& x);

IndexedAffineSpace restrict_to(const IndexedAffineSpace& a, const LabelList& t);
IndexedAffineSpace contract_to(const IndexedAffineSpace& a, const LabelList& t);
// Direct sum on disjoint label sets.
IndexedAffineSpace ext_sum(const IndexedAffineSpace& a, const IndexedAffineSpace& b);
IndexedAffineSpace ext_intersect(const IndexedAffineSpace& a, const IndexedAffineSpace& b);
IndexedAffineSpace matched(const IndexedAffineSpace& a, const IndexedAffineSpace& b);
IndexedAffineSpace skewed(const IndexedAffineSpace& a, const IndexedAffineSpace& b);
IndexedAffineSpace signflip(const IndexedAffineSpace& a, const LabelList& y);
IndexedAffineSpace relabel(const IndexedAffineSpace& a,
                           const std::function<Label(const Label&)>& map);

// Decides whether matched(a, b) is nonempty without forming it, by testing the
// solvability of the multiplier equation that equates the two translates'
// common-coordinate contributions against the offset gap.
bool affine_matched_nonvoid(const IndexedAffineSpace& a, const IndexedAffineSpace& b);

// Shared label-set helpers.
LabelList sorted_labels(LabelList labels);             // sort + reject duplicates
LabelList label_union(const LabelList& a, const LabelList& b);
LabelList label_intersection(const LabelList& a, const LabelList& b);
LabelList label_difference(const LabelList& a, const LabelList& b);

}  // namespace ila
