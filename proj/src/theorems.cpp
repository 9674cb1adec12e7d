#include "ila/theorems.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ila {

bool contains(const IndexedVectorSpace& v, const IndexedVectorSpace& w) {
    if (v.labels() != w.labels()) throw SpaceError("contains: index sets differ");
    return rref(v.rep().vstack(w.rep())).rank == v.dim();
}

bool iit_exists(const IndexedVectorSpace& v_sp, const IndexedVectorSpace& v_sq) {
    const LabelList s = label_intersection(v_sp.labels(), v_sq.labels());
    return contains(restrict_to(v_sp, s), restrict_to(v_sq, s)) &&
           contains(contract_to(v_sq, s), contract_to(v_sp, s));
}

IndexedVectorSpace iit_solve(const IndexedVectorSpace& v_sp, const IndexedVectorSpace& v_sq) {
    const LabelList s = label_intersection(v_sp.labels(), v_sq.labels());
    if (!contains(restrict_to(v_sp, s), restrict_to(v_sq, s)))
        throw IitError(IitError::Violation::Restriction,
                       "iit_solve: restriction of the known space to the shared labels "
                       "does not contain the target's restriction");
    if (!contains(contract_to(v_sq, s), contract_to(v_sp, s)))
        throw IitError(IitError::Violation::Contraction,
                       "iit_solve: contraction of the known space to the shared labels "
                       "is not contained in the target's contraction");
    IndexedVectorSpace result = matched(v_sp, v_sq);
    if (matched(v_sp, result) != v_sq)
        throw SpaceError("iit_solve: canonical solution failed the round trip");
    return result;
}

bool iit_uniqueness_holds(const IndexedVectorSpace& v_sp, const IndexedVectorSpace& v_pq) {
    const LabelList p = label_intersection(v_sp.labels(), v_pq.labels());
    return contains(restrict_to(v_sp, p), restrict_to(v_pq, p)) &&
           contains(contract_to(v_pq, p), contract_to(v_sp, p));
}

IndexedAffineSpace affine_iit_recover(const IndexedAffineSpace& a_sp,
                                      const IndexedAffineSpace& a_sq) {
    if (a_sp.is_void() || a_sq.is_void())
        throw SpaceError("affine_iit_recover: VOID input");
    IndexedAffineSpace candidate = matched(a_sp, a_sq);
    if (candidate.is_void())
        throw SpaceError("affine_iit_recover: candidate is void");
    if (matched(a_sp, candidate) != a_sq)
        throw SpaceError("affine_iit_recover: candidate failed the round trip");
    return candidate;
}

bool idt_check(const IndexedVectorSpace& v_sp, const IndexedVectorSpace& v_pq) {
    return perp(matched(v_sp, v_pq)) == skewed(perp(v_sp), perp(v_pq));
}

bool idt_check_star(const IndexedVectorSpace& v_sp, const IndexedVectorSpace& v_pq) {
    return star(matched(v_sp, v_pq)) == skewed(star(v_sp), star(v_pq));
}

std::uint64_t RandomSpaceGen::mix(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 step keeps per-trial streams decorrelated even for seed+1.
    std::uint64_t z = seed + (trial + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long RandomSpaceGen::next_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
}

Scalar RandomSpaceGen::next_entry(FieldMode mode, long bound) {
    mpq_class re(next_int(-bound, bound));
    if (mode == FieldMode::Rational) return Scalar(mode, re);
    mpq_class im(next_int(-bound, bound));
    return Scalar(mode, re, im);
}

IndexedVectorSpace RandomSpaceGen::next_space(FieldMode mode, const LabelList& labels,
                                              long bound) {
    const long rows = next_int(0, static_cast<long>(labels.size()));
    std::vector<std::vector<Scalar>> gens(static_cast<std::size_t>(rows));
    for (auto& row : gens) {
        row.reserve(labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) row.push_back(next_entry(mode, bound));
    }
    return IndexedVectorSpace::span(mode, labels, gens);
}

std::vector<Scalar> RandomSpaceGen::next_vector(FieldMode mode, std::size_t n, long bound) {
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(next_entry(mode, bound));
    return out;
}

LabelList numbered_labels(const std::string& stem, std::size_t count) {
    LabelList out;
    out.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) out.emplace_back(stem + std::to_string(k));
    return out;
}

namespace {

template <typename Trial>
SuiteResult run_suite(int trials, bool parallel, Trial&& trial) {
    SuiteResult result;
    result.trials = trials;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            std::string detail;
            if (!trial(t, detail)) {
#pragma omp critical
                {
                    ++result.failures;
                    if (result.detail.empty()) result.detail = detail;
                }
            }
        }
        return result;
    }
#else
    (void)parallel;
#endif
    for (int t = 0; t < trials; ++t) {
        std::string detail;
        if (!trial(t, detail)) {
            ++result.failures;
            if (result.detail.empty()) result.detail = detail;
        }
    }
    return result;
}

}  // namespace

SuiteResult run_idt_suite(FieldMode mode, int trials, std::uint64_t seed, int max_size,
                          bool parallel) {
    return run_suite(trials, parallel, [&](int t, std::string& detail) {
        RandomSpaceGen gen(RandomSpaceGen::mix(seed, static_cast<std::uint64_t>(t)));
        const LabelList s = numbered_labels("s", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const LabelList p = numbered_labels("p", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const LabelList q = numbered_labels("q", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const IndexedVectorSpace v_sp = gen.next_space(mode, label_union(s, p));
        const IndexedVectorSpace v_pq = gen.next_space(mode, label_union(p, q));
        const bool ok = mode == FieldMode::GaussianRational
                            ? idt_check_star(v_sp, v_pq) && idt_check(v_sp, v_pq)
                            : idt_check(v_sp, v_pq);
        if (!ok) {
            std::ostringstream os;
            os << "idt trial " << t << " (seed " << seed << ", |S|=" << s.size()
               << " |P|=" << p.size() << " |Q|=" << q.size() << ") failed";
            detail = os.str();
        }
        return ok;
    });
}

SuiteResult run_iit_suite(FieldMode mode, int trials, std::uint64_t seed, int max_size,
                          bool parallel) {
    return run_suite(trials, parallel, [&](int t, std::string& detail) {
        RandomSpaceGen gen(RandomSpaceGen::mix(seed, static_cast<std::uint64_t>(t)));
        const LabelList s = numbered_labels("s", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const LabelList p = numbered_labels("p", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const LabelList q = numbered_labels("q", static_cast<std::size_t>(gen.next_int(0, max_size)));
        const IndexedVectorSpace v_sp = gen.next_space(mode, label_union(s, p));
        const IndexedVectorSpace v_pq = gen.next_space(mode, label_union(p, q));
        const IndexedVectorSpace v_sq = matched(v_sp, v_pq);
        std::string why;
        bool ok = true;
        try {
            if (!iit_exists(v_sp, v_sq)) {
                ok = false;
                why = "existence conditions failed for a constructed instance";
            } else {
                const IndexedVectorSpace solved = iit_solve(v_sp, v_sq);
                if (matched(v_sp, solved) != v_sq) {
                    ok = false;
                    why = "round trip mismatch";
                } else if (!iit_uniqueness_holds(v_sp, solved)) {
                    ok = false;
                    why = "canonical solution failed the uniqueness conditions";
                }
            }
        } catch (const SpaceError& e) {
            ok = false;
            why = e.what();
        }
        if (!ok) {
            std::ostringstream os;
            os << "iit trial " << t << " (seed " << seed << "): " << why;
            detail = os.str();
        }
        return ok;
    });
}

}  // namespace ila
