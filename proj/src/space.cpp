#include "ila/space.hpp"

#include <algorithm>
#include <numeric>

namespace ila {

LabelList sorted_labels(LabelList labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw SpaceError("duplicate label in index set");
    return labels;
}

LabelList label_union(const LabelList& a, const LabelList& b) {
    LabelList out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LabelList label_intersection(const LabelList& a, const LabelList& b) {
    LabelList out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LabelList label_difference(const LabelList& a, const LabelList& b) {
    LabelList out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

std::size_t find_index(const LabelList& sorted, const Label& l) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), l);
    if (it == sorted.end() || *it != l) throw SpaceError("label not in index set: " + l.str());
    return static_cast<std::size_t>(it - sorted.begin());
}

bool is_subset(const LabelList& sub, const LabelList& sorted) {
    return std::includes(sorted.begin(), sorted.end(), sub.begin(), sub.end());
}

// Re-expresses rows given over `src` (sorted) as rows over `dst` (sorted,
// src ⊆ dst), zero on the new columns.
ExactMatrix embed_columns(const ExactMatrix& m, const LabelList& src, const LabelList& dst) {
    ExactMatrix out(m.mode(), m.rows(), dst.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        const std::size_t dj = find_index(dst, src[j]);
        for (std::size_t i = 0; i < m.rows(); ++i) out.at(i, dj) = m.at(i, j);
    }
    return out;
}

void require_same_mode(FieldMode a, FieldMode b) {
    if (a != b) throw SpaceError("mixed field modes");
}

}  // namespace

IndexedVectorSpace IndexedVectorSpace::span(FieldMode mode, LabelList labels,
                                            const std::vector<std::vector<Scalar>>& generators) {
    ExactMatrix m(mode, generators.size(), labels.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != labels.size())
            throw SpaceError("generator length does not match index set");
        for (std::size_t j = 0; j < labels.size(); ++j) m.at(i, j) = generators[i][j];
    }
    return from_rep(mode, std::move(labels), std::move(m));
}

IndexedVectorSpace IndexedVectorSpace::from_rep(FieldMode mode, LabelList labels,
                                                ExactMatrix rep) {
    if (rep.cols() != labels.size()) throw SpaceError("rep width does not match index set");
    // Sort the index set and permute columns to match.
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    LabelList sorted;
    sorted.reserve(labels.size());
    for (std::size_t j : order) sorted.push_back(labels[j]);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw SpaceError("duplicate label in index set");

    IndexedVectorSpace v;
    v.mode_ = mode;
    v.labels_ = std::move(sorted);
    v.rep_ = rref(rep.select_columns(order)).matrix;
    return v;
}

IndexedVectorSpace IndexedVectorSpace::zero(FieldMode mode, LabelList labels) {
    const std::size_t n = labels.size();
    return from_rep(mode, std::move(labels), ExactMatrix(mode, 0, n));
}

IndexedVectorSpace IndexedVectorSpace::full(FieldMode mode, LabelList labels) {
    const std::size_t n = labels.size();
    return from_rep(mode, std::move(labels), ExactMatrix::identity(mode, n));
}

bool IndexedVectorSpace::has_label(const Label& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    return it != labels_.end() && *it == l;
}

std::size_t IndexedVectorSpace::index_of(const Label& l) const {
    return find_index(labels_, l);
}

bool member(const IndexedVectorSpace& v, const std::vector<Scalar>& x) {
    if (x.size() != v.labels().size()) throw SpaceError("member: length mismatch");
    std::vector<Scalar> r = x;
    const ExactMatrix& rep = v.rep();
    // Reduce against the RREF rows; membership iff the residue vanishes.
    for (std::size_t p = 0; p < rep.rows(); ++p) {
        std::size_t c = 0;
        while (c < rep.cols() && rep.at(p, c).is_zero()) ++c;
        if (c == rep.cols()) continue;
        const Scalar f = r[c];
        if (f.is_zero()) continue;
        for (std::size_t j = c; j < rep.cols(); ++j) r[j] -= f * rep.at(p, j);
    }
    return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

IndexedVectorSpace perp(const IndexedVectorSpace& v) {
    return IndexedVectorSpace::from_rep(v.mode(), v.labels(), nullspace_basis(v.rep()));
}

IndexedVectorSpace star(const IndexedVectorSpace& v) {
    return IndexedVectorSpace::from_rep(v.mode(), v.labels(),
                                        nullspace_basis(v.rep()).conj_entrywise());
}

IndexedVectorSpace restrict_to(const IndexedVectorSpace& v, const LabelList& t) {
    const LabelList ts = sorted_labels(t);
    if (!is_subset(ts, v.labels())) throw SpaceError("restrict: not a subset of the index set");
    std::vector<std::size_t> cols;
    cols.reserve(ts.size());
    for (const Label& l : ts) cols.push_back(v.index_of(l));
    return IndexedVectorSpace::from_rep(v.mode(), ts, v.rep().select_columns(cols));
}

IndexedVectorSpace contract_to(const IndexedVectorSpace& v, const LabelList& t) {
    const LabelList ts = sorted_labels(t);
    if (!is_subset(ts, v.labels())) throw SpaceError("contract: not a subset of the index set");
    const LabelList rest = label_difference(v.labels(), ts);
    std::vector<std::size_t> order;
    order.reserve(v.labels().size());
    for (const Label& l : rest) order.push_back(v.index_of(l));
    for (const Label& l : ts) order.push_back(v.index_of(l));
    // With the discarded columns leading, the RREF rows whose pivots fall in
    // the kept block are exactly the members vanishing off T.
    const RrefResult r = rref(v.rep().select_columns(order));
    std::vector<std::vector<Scalar>> kept;
    for (std::size_t p = 0; p < r.pivots.size(); ++p) {
        if (r.pivots[p] < rest.size()) continue;
        std::vector<Scalar> row;
        row.reserve(ts.size());
        for (std::size_t j = 0; j < ts.size(); ++j) row.push_back(r.matrix.at(p, rest.size() + j));
        kept.push_back(std::move(row));
    }
    return IndexedVectorSpace::span(v.mode(), ts, kept);
}

IndexedVectorSpace ext_sum(const IndexedVectorSpace& v, const IndexedVectorSpace& w) {
    require_same_mode(v.mode(), w.mode());
    const LabelList u = label_union(v.labels(), w.labels());
    return IndexedVectorSpace::from_rep(
        v.mode(), u,
        embed_columns(v.rep(), v.labels(), u).vstack(embed_columns(w.rep(), w.labels(), u)));
}

IndexedVectorSpace ext_intersect(const IndexedVectorSpace& v, const IndexedVectorSpace& w) {
    require_same_mode(v.mode(), w.mode());
    const LabelList u = label_union(v.labels(), w.labels());

    // Generators of V extended by the full space on the labels V misses, and
    // likewise for W.  A common member is a coefficient pair (a, b) with
    // a Gv = b Gw, found as the kernel of [Gv^T | -Gw^T].
    auto extended = [&](const IndexedVectorSpace& s) {
        ExactMatrix gen = embed_columns(s.rep(), s.labels(), u);
        const LabelList missing = label_difference(u, s.labels());
        ExactMatrix units(s.mode(), missing.size(), u.size());
        for (std::size_t k = 0; k < missing.size(); ++k)
            units.at(k, find_index(u, missing[k])) = Scalar::one(s.mode());
        return gen.vstack(units);
    };
    const ExactMatrix gv = extended(v);
    const ExactMatrix gw = extended(w);

    ExactMatrix system(v.mode(), u.size(), gv.rows() + gw.rows());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t k = 0; k < gv.rows(); ++k) system.at(i, k) = gv.at(k, i);
        for (std::size_t k = 0; k < gw.rows(); ++k)
            system.at(i, gv.rows() + k) = -gw.at(k, i);
    }
    const ExactMatrix coeffs = nullspace_basis(system);
    ExactMatrix members(v.mode(), coeffs.rows(), u.size());
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        for (std::size_t k = 0; k < gv.rows(); ++k) {
            if (coeffs.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < u.size(); ++j)
                members.at(i, j) += coeffs.at(i, k) * gv.at(k, j);
        }
    return IndexedVectorSpace::from_rep(v.mode(), u, std::move(members));
}

IndexedVectorSpace matched(const IndexedVectorSpace& a, const IndexedVectorSpace& b) {
    const LabelList common = label_intersection(a.labels(), b.labels());
    const LabelList result = label_difference(label_union(a.labels(), b.labels()), common);
    return restrict_to(ext_intersect(a, b), result);
}

IndexedVectorSpace skewed(const IndexedVectorSpace& a, const IndexedVectorSpace& b) {
    const LabelList common = label_intersection(a.labels(), b.labels());
    return matched(a, signflip(b, common));
}

IndexedVectorSpace signflip(const IndexedVectorSpace& v, const LabelList& y) {
    const LabelList ys = sorted_labels(y);
    if (!is_subset(ys, v.labels())) throw SpaceError("signflip: not a subset of the index set");
    std::vector<std::size_t> cols;
    for (const Label& l : ys) cols.push_back(v.index_of(l));
    return IndexedVectorSpace::from_rep(v.mode(), v.labels(), v.rep().negate_columns(cols));
}

IndexedVectorSpace relabel(const IndexedVectorSpace& v,
                           const std::function<Label(const Label&)>& map) {
    LabelList mapped;
    mapped.reserve(v.labels().size());
    for (const Label& l : v.labels()) mapped.push_back(map(l));
    return IndexedVectorSpace::from_rep(v.mode(), std::move(mapped), v.rep());
}

IndexedAffineSpace IndexedAffineSpace::make(std::vector<Scalar> offset,
                                            IndexedVectorSpace translate) {
    if (offset.size() != translate.labels().size())
        throw SpaceError("affine offset length mismatch");
    // Canonicalize: zero the offset at the translate's pivot columns by
    // subtracting multiples of the RREF rows.
    const ExactMatrix& rep = translate.rep();
    for (std::size_t p = 0; p < rep.rows(); ++p) {
        std::size_t c = 0;
        while (c < rep.cols() && rep.at(p, c).is_zero()) ++c;
        if (c == rep.cols()) continue;
        const Scalar f = offset[c];
        if (f.is_zero()) continue;
        for (std::size_t j = c; j < rep.cols(); ++j) offset[j] -= f * rep.at(p, j);
    }
    IndexedAffineSpace a;
    a.translate_ = std::move(translate);
    a.offset_ = std::move(offset);
    return a;
}

IndexedAffineSpace IndexedAffineSpace::make_void(FieldMode mode, LabelList labels) {
    IndexedAffineSpace a;
    a.translate_ = IndexedVectorSpace::zero(mode, std::move(labels));
    a.offset_.assign(a.translate_.labels().size(), Scalar(mode));
    a.void_ = true;
    return a;
}

IndexedAffineSpace IndexedAffineSpace::from_space(IndexedVectorSpace translate) {
    std::vector<Scalar> zero(translate.labels().size(), Scalar(translate.mode()));
    return make(std::move(zero), std::move(translate));
}

IndexedAffineSpace IndexedAffineSpace::point(FieldMode mode, LabelList labels,
                                             std::vector<Scalar> coords) {
    if (coords.size() != labels.size()) throw SpaceError("point: length mismatch");
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    LabelList sorted;
    std::vector<Scalar> permuted;
    for (std::size_t j : order) {
        sorted.push_back(labels[j]);
        permuted.push_back(coords[j]);
    }
    return make(std::move(permuted), IndexedVectorSpace::zero(mode, std::move(sorted)));
}

IndexedAffineSpace IndexedAffineSpace::from_equations(FieldMode mode, LabelList labels,
                                                      const ExactMatrix& c,
                                                      const std::vector<Scalar>& d) {
    if (c.cols() != labels.size()) throw SpaceError("equations width mismatch");
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    LabelList sorted;
    for (std::size_t j : order) sorted.push_back(labels[j]);

    const SolveReport report = solve_classified(c.select_columns(order), d);
    if (report.kind == SolveReport::Kind::None)
        return make_void(mode, std::move(sorted));
    return make(*report.particular,
                IndexedVectorSpace::from_rep(mode, std::move(sorted), report.nullspace));
}

std::pair<ExactMatrix, std::vector<Scalar>> IndexedAffineSpace::equations() const {
    if (void_) throw SpaceError("equations of a void affine space");
    const ExactMatrix c = perp(translate_).rep();
    return {c, matvec(c, offset_)};
}

bool IndexedAffineSpace::operator==(const IndexedAffineSpace& rhs) const {
    if (labels() != rhs.labels() || void_ != rhs.void_) return false;
    if (void_) return true;
    return translate_ == rhs.translate_ && offset_ == rhs.offset_;
}

bool member(const IndexedAffineSpace& a, const std::vector<Scalar>& x) {
    if (a.is_void()) return false;
    if (x.size() != a.offset().size()) throw SpaceError("member: length mismatch");
    std::vector<Scalar> delta = x;
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= a.offset()[i];
    return member(a.translate(), delta);
}

IndexedAffineSpace restrict_to(const IndexedAffineSpace& a, const LabelList& t) {
    const LabelList ts = sorted_labels(t);
    if (a.is_void()) return IndexedAffineSpace::make_void(a.mode(), ts);
    std::vector<Scalar> off;
    off.reserve(ts.size());
    for (const Label& l : ts) off.push_back(a.offset()[a.translate().index_of(l)]);
    return IndexedAffineSpace::make(std::move(off), restrict_to(a.translate(), ts));
}

IndexedAffineSpace contract_to(const IndexedAffineSpace& a, const LabelList& t) {
    const LabelList ts = sorted_labels(t);
    if (a.is_void()) return IndexedAffineSpace::make_void(a.mode(), ts);
    const LabelList rest = label_difference(a.labels(), ts);
    auto [c, d] = a.equations();
    ExactMatrix units(a.mode(), rest.size(), a.labels().size());
    for (std::size_t k = 0; k < rest.size(); ++k)
        units.at(k, a.translate().index_of(rest[k])) = Scalar::one(a.mode());
    std::vector<Scalar> rhs = d;
    rhs.insert(rhs.end(), rest.size(), Scalar(a.mode()));
    const IndexedAffineSpace pinned =
        IndexedAffineSpace::from_equations(a.mode(), a.labels(), c.vstack(units), rhs);
    if (pinned.is_void()) return IndexedAffineSpace::make_void(a.mode(), ts);
    return restrict_to(pinned, ts);
}

IndexedAffineSpace ext_sum(const IndexedAffineSpace& a, const IndexedAffineSpace& b) {
    require_same_mode(a.mode(), b.mode());
    if (!label_intersection(a.labels(), b.labels()).empty())
        throw SpaceError("affine ext_sum requires disjoint index sets");
    const LabelList u = label_union(a.labels(), b.labels());
    if (a.is_void() || b.is_void()) return IndexedAffineSpace::make_void(a.mode(), u);
    std::vector<Scalar> off(u.size(), Scalar(a.mode()));
    for (std::size_t j = 0; j < a.labels().size(); ++j)
        off[find_index(u, a.labels()[j])] = a.offset()[j];
    for (std::size_t j = 0; j < b.labels().size(); ++j)
        off[find_index(u, b.labels()[j])] = b.offset()[j];
    return IndexedAffineSpace::make(std::move(off), ext_sum(a.translate(), b.translate()));
}

IndexedAffineSpace ext_intersect(const IndexedAffineSpace& a, const IndexedAffineSpace& b) {
    require_same_mode(a.mode(), b.mode());
    const LabelList u = label_union(a.labels(), b.labels());
    if (a.is_void() || b.is_void()) return IndexedAffineSpace::make_void(a.mode(), u);
    auto [ca, da] = a.equations();
    auto [cb, db] = b.equations();
    ExactMatrix stacked =
        embed_columns(ca, a.labels(), u).vstack(embed_columns(cb, b.labels(), u));
    std::vector<Scalar> rhs = da;
    rhs.insert(rhs.end(), db.begin(), db.end());
    return IndexedAffineSpace::from_equations(a.mode(), u, stacked, rhs);
}

IndexedAffineSpace matched(const IndexedAffineSpace& a, const IndexedAffineSpace& b) {
    const LabelList common = label_intersection(a.labels(), b.labels());
    const LabelList result = label_difference(label_union(a.labels(), b.labels()), common);
    return restrict_to(ext_intersect(a, b), result);
}

IndexedAffineSpace skewed(const IndexedAffineSpace& a, const IndexedAffineSpace& b) {
    const LabelList common = label_intersection(a.labels(), b.labels());
    return matched(a, signflip(b, common));
}

IndexedAffineSpace signflip(const IndexedAffineSpace& a, const LabelList& y) {
    const LabelList ys = sorted_labels(y);
    if (a.is_void()) return a;
    std::vector<Scalar> off = a.offset();
    for (const Label& l : ys) {
        const std::size_t j = a.translate().index_of(l);
        off[j] = -off[j];
    }
    return IndexedAffineSpace::make(std::move(off), signflip(a.translate(), ys));
}

IndexedAffineSpace relabel(const IndexedAffineSpace& a,
                           const std::function<Label(const Label&)>& map) {
    IndexedVectorSpace t = relabel(a.translate(), map);
    if (a.is_void()) return IndexedAffineSpace::make_void(a.mode(), t.labels());
    // Reorder the offset to the relabeled (re-sorted) coordinate order.
    std::vector<Scalar> off(a.offset().size(), Scalar(a.mode()));
    for (std::size_t j = 0; j < a.labels().size(); ++j)
        off[t.index_of(map(a.labels()[j]))] = a.offset()[j];
    return IndexedAffineSpace::make(std::move(off), std::move(t));
}

bool affine_matched_nonvoid(const IndexedAffineSpace& a, const IndexedAffineSpace& b) {
    require_same_mode(a.mode(), b.mode());
    if (a.is_void() || b.is_void()) return false;
    const LabelList common = label_intersection(a.labels(), b.labels());

    // Members of the two flats agree on the common coordinates iff multipliers
    // (lambda, sigma) over the translates' bases solve
    //   Bp^T lambda - Ap^T sigma = (offset_b - offset_a) on the common columns.
    std::vector<std::size_t> pa, pb;
    for (const Label& l : common) {
        pa.push_back(a.translate().index_of(l));
        pb.push_back(b.translate().index_of(l));
    }
    const ExactMatrix bp = a.translate().rep().select_columns(pa);
    const ExactMatrix ap = b.translate().rep().select_columns(pb);
    ExactMatrix system(a.mode(), common.size(), bp.rows() + ap.rows());
    std::vector<Scalar> rhs;
    rhs.reserve(common.size());
    for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t k = 0; k < bp.rows(); ++k) system.at(i, k) = bp.at(k, i);
        for (std::size_t k = 0; k < ap.rows(); ++k) system.at(i, bp.rows() + k) = -ap.at(k, i);
        rhs.push_back(b.offset()[pb[i]] - a.offset()[pa[i]]);
    }
    return solve_classified(system, rhs).kind != SolveReport::Kind::None;
}

}  // namespace ila
