#include "xvcs/scheme.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace xvcs {

namespace {

void validate_targets(const QualifiedMatrix& q, const std::vector<BitMatrix>& b,
                      const char* what) {
    for (const BitMatrix& mat : b) {
        if (mat.rows() != q.t()) {
            throw std::invalid_argument(std::string(what) + ": target row count != t");
        }
        if (mat.cols() != b.front().cols()) {
            throw std::invalid_argument(std::string(what) + ": ragged target widths");
        }
    }
}

bool all_equal(const std::vector<BitMatrix>& v) {
    return std::all_of(v.begin(), v.end(), [&](const BitMatrix& m) { return m == v.front(); });
}

int slice_weight(const std::uint64_t* buf, int start, int len) {
    int w = 0;
    for (int i = 0; i < len; ++i) {
        int c = start + i;
        w += static_cast<int>((buf[c >> 6] >> (c & 63)) & 1u);
    }
    return w;
}

BitMatrix slice_bits(const std::uint64_t* buf, int start, int len) {
    BitMatrix r(1, len);
    for (int i = 0; i < len; ++i) {
        int c = start + i;
        if ((buf[c >> 6] >> (c & 63)) & 1u) {
            r.set(0, i, true);
        }
    }
    return r;
}

}  // namespace

LinearScheme make_scheme(QualifiedMatrix qualified, std::vector<BitMatrix> b0,
                         std::vector<BitMatrix> b1, std::optional<std::vector<Subset>> declared) {
    if (b0.empty() || b0.size() != b1.size()) {
        throw std::invalid_argument("make_scheme: need equal nonempty target lists");
    }
    validate_targets(qualified, b0, "make_scheme white");
    validate_targets(qualified, b1, "make_scheme black");
    if (b0.front().cols() != b1.front().cols()) {
        throw std::invalid_argument("make_scheme: white/black pixel expansion differs");
    }
    if (qualified.t() < 1 || qualified.t() != static_cast<int>(qualified.row_sets.size())) {
        throw std::invalid_argument("make_scheme: qualified matrix needs one set per row");
    }

    LinearScheme s;
    s.qualified = std::move(qualified);
    s.b0 = std::move(b0);
    s.b1 = std::move(b1);
    s.k = static_cast<int>(s.b0.size());
    s.m = s.b0.front().cols();
    s.declared = declared ? std::move(*declared) : s.qualified.row_sets;

    // one elimination over [qualified | all targets]
    BitMatrix targets = s.b0[0];
    for (std::size_t j = 1; j < s.b0.size(); ++j) {
        targets = BitMatrix::hstack(targets, s.b0[j]);
    }
    for (const BitMatrix& b : s.b1) {
        targets = BitMatrix::hstack(targets, b);
    }
    SolveResult joint = gf2_solve(s.qualified.matrix, targets);

    if (joint.consistent) {
        s.well_formed = true;
        auto slice = [&](int block) {
            std::vector<int> cols(static_cast<std::size_t>(s.m));
            std::iota(cols.begin(), cols.end(), block * s.m);
            SolveResult r;
            r.consistent = true;
            r.var_count = joint.var_count;
            r.rhs_cols = s.m;
            r.rank = joint.rank;
            r.particular = joint.particular.select_cols(cols);
            r.nullspace = joint.nullspace;
            return r;
        };
        for (int j = 0; j < s.k; ++j) {
            s.white.push_back(slice(j));
        }
        for (int j = 0; j < s.k; ++j) {
            s.black.push_back(slice(s.k + j));
        }
    } else {
        // identify the defective system for diagnostics
        s.well_formed = false;
        for (int j = 0; j < s.k && s.defect.empty(); ++j) {
            if (!gf2_solve(s.qualified.matrix, s.b0[static_cast<std::size_t>(j)]).consistent) {
                s.defect = "white system " + std::to_string(j + 1) + " is inconsistent";
            }
        }
        for (int j = 0; j < s.k && s.defect.empty(); ++j) {
            if (!gf2_solve(s.qualified.matrix, s.b1[static_cast<std::size_t>(j)]).consistent) {
                s.defect = "black system " + std::to_string(j + 1) + " is inconsistent";
            }
        }
        if (s.defect.empty()) {
            s.defect = "linear systems are inconsistent";
        }
    }

    BitMatrix full = BitMatrix::hstack(s.qualified.matrix, targets);
    s.stacks = EchelonSystem(s.n(), 2 * s.k * s.m);
    for (int r = 0; r < s.t(); ++r) {
        s.stacks.add_row(full.row(r));
    }
    return s;
}

std::string SchemeClass::str() const {
    std::string base;
    switch (kind) {
        case SchemeKind::NotAScheme: base = "NotAScheme"; break;
        case SchemeKind::Sxvcs: base = "SXVCS"; break;
        case SchemeKind::SemiWhite: base = "SemiSXVCS-White"; break;
        case SchemeKind::SemiBlack: base = "SemiSXVCS-Black"; break;
        case SchemeKind::General: base = "XVCS"; break;
    }
    if (perfect_white) {
        base += "+PW";
    }
    return base;
}

SchemeClass scheme_class_from_string(const std::string& s) {
    SchemeClass c;
    std::string base = s;
    if (base.size() > 3 && base.substr(base.size() - 3) == "+PW") {
        c.perfect_white = true;
        base = base.substr(0, base.size() - 3);
    }
    if (base == "NotAScheme") {
        c.kind = SchemeKind::NotAScheme;
    } else if (base == "SXVCS") {
        c.kind = SchemeKind::Sxvcs;
    } else if (base == "SemiSXVCS-White") {
        c.kind = SchemeKind::SemiWhite;
    } else if (base == "SemiSXVCS-Black") {
        c.kind = SchemeKind::SemiBlack;
    } else if (base == "XVCS") {
        c.kind = SchemeKind::General;
    } else {
        throw std::invalid_argument("unknown scheme class '" + s + "'");
    }
    return c;
}

StackResult stack_result(const LinearScheme& s, const Subset& q) {
    if (!s.well_formed) {
        throw std::invalid_argument("stack_result: scheme is not well formed: " + s.defect);
    }
    BitMatrix combo;
    if (!s.stacks.combine(indicator_row(q, s.n()), combo)) {
        throw UndeterminedStack("stack undetermined: " + subset_string(q) +
                                " is outside the row space of the qualified matrix");
    }
    StackResult res;
    for (int j = 0; j < s.k; ++j) {
        std::vector<int> cols(static_cast<std::size_t>(s.m));
        std::iota(cols.begin(), cols.end(), j * s.m);
        res.e0.push_back(combo.select_cols(cols));
        std::iota(cols.begin(), cols.end(), (s.k + j) * s.m);
        res.e1.push_back(combo.select_cols(cols));
    }
    res.static_white = all_equal(res.e0);
    res.static_black = all_equal(res.e1);
    return res;
}

namespace {

ContrastReport contrast_impl(const LinearScheme& s, bool with_details, bool averaged) {
    ContrastReport rep;
    if (!s.well_formed) {
        rep.failure = ContrastFailure{{}, -1, -1, s.defect};
        return rep;
    }
    const int k = s.k;
    const int m = s.m;

    if (!averaged) {
        // per target row: every white weight strictly below every black weight
        for (int r = 0; r < s.t(); ++r) {
            int max_w = -1, arg_w = -1, min_b = m + 1, arg_b = -1;
            for (int i = 0; i < k; ++i) {
                int w = s.b0[static_cast<std::size_t>(i)].row_weight(r);
                if (w > max_w) {
                    max_w = w;
                    arg_w = i;
                }
            }
            for (int j = 0; j < k; ++j) {
                int w = s.b1[static_cast<std::size_t>(j)].row_weight(r);
                if (w < min_b) {
                    min_b = w;
                    arg_b = j;
                }
            }
            if (max_w >= min_b) {
                rep.failure = ContrastFailure{
                    s.qualified.row_sets[static_cast<std::size_t>(r)], arg_w, arg_b,
                    "row " + std::to_string(r + 1) + ": white weight " + std::to_string(max_w) +
                        " (system " + std::to_string(arg_w + 1) + ") >= black weight " +
                        std::to_string(min_b) + " (system " + std::to_string(arg_b + 1) + ")"};
                return rep;
            }
        }
    }

    // evaluate per declared qualified set through the cached echelon
    const int width = s.stacks.width();
    std::vector<std::uint64_t> buf(static_cast<std::size_t>((width + 63) / 64));
    std::int64_t sum_diff = 0;
    std::int64_t min_diff = 0;
    bool have_min = false;

    for (const Subset& q : s.declared) {
        std::fill(buf.begin(), buf.end(), 0);
        for (int p : q) {
            buf[static_cast<std::size_t>(p >> 6)] |= std::uint64_t(1) << (p & 63);
        }
        s.stacks.reduce_in_place(buf.data());
        if (!s.stacks.a_part_is_zero(buf.data())) {
            rep.failure =
                ContrastFailure{q, -1, -1, "stack undetermined for " + subset_string(q)};
            return rep;
        }
        int sw = 0, sb = 0;
        int max_w = -1, arg_w = -1, min_b = m + 1, arg_b = -1;
        for (int i = 0; i < k; ++i) {
            int w = slice_weight(buf.data(), s.n() + i * m, m);
            sw += w;
            if (w > max_w) {
                max_w = w;
                arg_w = i;
            }
        }
        for (int j = 0; j < k; ++j) {
            int w = slice_weight(buf.data(), s.n() + (k + j) * m, m);
            sb += w;
            if (w < min_b) {
                min_b = w;
                arg_b = j;
            }
        }
        bool ok = averaged ? (sw < sb) : (max_w < min_b);
        if (!ok) {
            rep.failure = ContrastFailure{
                q, arg_w, arg_b,
                (averaged ? "averaged black weight does not exceed white for "
                          : "white stack weight >= black stack weight for ") +
                    subset_string(q)};
            return rep;
        }
        std::int64_t diff = sb - sw;
        sum_diff += diff;
        if (!have_min || diff < min_diff) {
            min_diff = diff;
            have_min = true;
        }
        if (with_details) {
            PerQContrast pq;
            pq.q = q;
            pq.alpha = Rational(diff, static_cast<std::int64_t>(k) * m);
            for (int i = 0; i < k; ++i) {
                pq.e0.push_back(slice_bits(buf.data(), s.n() + i * m, m));
            }
            for (int j = 0; j < k; ++j) {
                pq.e1.push_back(slice_bits(buf.data(), s.n() + (k + j) * m, m));
            }
            pq.is_static = all_equal(pq.e0) && all_equal(pq.e1);
            rep.per_q.push_back(std::move(pq));
        }
    }

    rep.pass = true;
    const std::int64_t denom = static_cast<std::int64_t>(k) * m;
    rep.average = Rational(sum_diff, denom * static_cast<std::int64_t>(s.declared.size()));
    rep.min_alpha = Rational(min_diff, denom);
    return rep;
}

}  // namespace

ContrastReport check_contrast(const LinearScheme& s, bool with_details) {
    return contrast_impl(s, with_details, /*averaged=*/false);
}

ContrastReport check_contrast_average(const LinearScheme& s, bool with_details) {
    return contrast_impl(s, with_details, /*averaged=*/true);
}

std::vector<BitMatrix> restricted_basis(const std::vector<BitMatrix>& nullspace, const Subset& f) {
    std::vector<BitMatrix> basis;
    std::vector<int> pivots;
    for (const BitMatrix& v : nullspace) {
        BitMatrix r = v.select_rows(f);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (r.get(pivots[i], 0)) {
                r ^= basis[i];
            }
        }
        int p = -1;
        for (int row = 0; row < r.rows(); ++row) {
            if (r.get(row, 0)) {
                p = row;
                break;
            }
        }
        if (p >= 0) {
            basis.push_back(std::move(r));
            pivots.push_back(p);
        }
    }
    return basis;
}

BitMatrix canonical_restricted(const BitMatrix& x, const Subset& f,
                               const std::vector<BitMatrix>& rbasis) {
    BitMatrix xr = x.select_rows(f);
    for (const BitMatrix& e : rbasis) {
        int p = -1;
        for (int row = 0; row < e.rows(); ++row) {
            if (e.get(row, 0)) {
                p = row;
                break;
            }
        }
        for (int c = 0; c < xr.cols(); ++c) {
            if (xr.get(p, c)) {
                for (int row = 0; row < xr.rows(); ++row) {
                    if (e.get(row, 0)) {
                        xr.set(row, c, !xr.get(row, c));
                    }
                }
            }
        }
    }
    return xr;
}

namespace {

// Sorted multiset of the restricted solution values of one system, with
// repetitions, as flat bit strings. Empty when too large to print.
std::string restricted_set_string(const LinearScheme& s, const SolveResult& r, const Subset& f) {
    auto rbasis = restricted_basis(r.nullspace, f);
    const int dv = static_cast<int>(rbasis.size());
    const int dim = r.nullity();
    const std::int64_t distinct_bits = static_cast<std::int64_t>(dv) * s.m;
    const std::int64_t mult_bits = static_cast<std::int64_t>(dim - dv) * s.m;
    if (distinct_bits > 3 || mult_bits > 3) {
        return {};
    }
    SolveResult facade;
    facade.consistent = true;
    facade.var_count = static_cast<int>(f.size());
    facade.rhs_cols = s.m;
    facade.rank = facade.var_count - dv;
    facade.particular = r.particular.select_rows(f);
    facade.nullspace = rbasis;
    std::vector<std::string> entries;
    for_each_solution(facade, std::uint64_t(1) << 6, [&](const BitMatrix& v) {
        for (std::int64_t c = 0; c < (std::int64_t(1) << mult_bits); ++c) {
            entries.push_back(v.flat_string());
        }
    });
    std::sort(entries.begin(), entries.end());
    std::string out = "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += entries[i];
    }
    out += '}';
    return out;
}

std::string security_detail(const LinearScheme& s, const Subset& f) {
    if (s.k == 1) {
        std::string s0 = restricted_set_string(s, s.white[0], f);
        std::string s1 = restricted_set_string(s, s.black[0], f);
        if (!s0.empty() && !s1.empty()) {
            return "S0[F]=" + s0 + " != S1[F]=" + s1;
        }
        auto rbasis = restricted_basis(s.nullspace(), f);
        return "restricted cosets differ: representative " +
               canonical_restricted(s.white[0].particular, f, rbasis).flat_string() + " vs " +
               canonical_restricted(s.black[0].particular, f, rbasis).flat_string();
    }
    auto rbasis = restricted_basis(s.nullspace(), f);
    std::map<BitMatrix, int> reps;
    for (const SolveResult& r : s.white) {
        reps[canonical_restricted(r.particular, f, rbasis)] += 1;
    }
    for (const SolveResult& r : s.black) {
        reps[canonical_restricted(r.particular, f, rbasis)] -= 1;
    }
    for (const auto& [rep, count] : reps) {
        if (count != 0) {
            return "representative " + rep.flat_string() + " occurs " +
                   std::to_string(count > 0 ? count : 0) + " times for white vs " +
                   std::to_string(count < 0 ? -count : 0) + " extra for black";
        }
    }
    return "restriction multisets differ";
}

// Minimal failing forbidden subset: drop elements while the test still fails.
Subset minimize_failure(Subset f, const std::function<bool(const Subset&)>& passes) {
    bool changed = true;
    while (changed && f.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Subset candidate = f;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (!passes(candidate)) {
                f = std::move(candidate);
                changed = true;
                break;
            }
        }
    }
    return f;
}

SecurityReport security_failure(const LinearScheme& s, Subset f,
                                const std::function<bool(const Subset&)>& passes) {
    Subset minimal = minimize_failure(std::move(f), passes);
    SecurityReport rep;
    rep.failure = SecurityFailure{minimal, security_detail(s, minimal)};
    return rep;
}

}  // namespace

SecurityReport check_security(const LinearScheme& s, const ForbiddenFamily& fam) {
    if (!s.well_formed) {
        SecurityReport rep;
        rep.failure = SecurityFailure{{}, s.defect};
        return rep;
    }
    const int n = s.n();

    if (s.k == 1) {
        // block system: shares for white and black, restrictions forced equal
        EchelonSystem base(2 * n, s.m);
        {
            BitMatrix zero_n(1, n);
            for (int r = 0; r < s.t(); ++r) {
                BitMatrix g = s.qualified.matrix.row(r);
                base.add_row(BitMatrix::hstack(BitMatrix::hstack(g, zero_n), s.b0[0].row(r)));
                base.add_row(BitMatrix::hstack(BitMatrix::hstack(zero_n, g), s.b1[0].row(r)));
            }
        }
        auto passes = [&](const Subset& f) {
            if (f.empty()) {
                return true;
            }
            auto m = base.mark();
            for (int p : f) {
                base.add_selector_row({p, n + p});
            }
            bool ok = base.consistent();
            base.rollback(m);
            return ok;
        };
        for (const Subset& f : fam.maximal_forbidden()) {
            if (!passes(f)) {
                return security_failure(s, f, passes);
            }
        }
        return SecurityReport{true, std::nullopt};
    }

    // k > 1: multisets of canonical coset representatives must agree
    auto passes = [&](const Subset& f) {
        if (f.empty()) {
            return true;
        }
        auto rbasis = restricted_basis(s.nullspace(), f);
        std::map<BitMatrix, int> reps;
        for (const SolveResult& r : s.white) {
            reps[canonical_restricted(r.particular, f, rbasis)] += 1;
        }
        for (const SolveResult& r : s.black) {
            reps[canonical_restricted(r.particular, f, rbasis)] -= 1;
        }
        return std::all_of(reps.begin(), reps.end(),
                           [](const auto& kv) { return kv.second == 0; });
    };
    for (const Subset& f : fam.maximal_forbidden()) {
        if (!passes(f)) {
            return security_failure(s, f, passes);
        }
    }
    return SecurityReport{true, std::nullopt};
}

SecurityReport check_security_pw(const LinearScheme& s, const ForbiddenFamily& fam) {
    if (s.k != 1) {
        throw std::invalid_argument("check_security_pw: requires a single system per color");
    }
    if (!s.well_formed) {
        SecurityReport rep;
        rep.failure = SecurityFailure{{}, s.defect};
        return rep;
    }
    if (!s.b0[0].is_zero()) {
        throw std::invalid_argument("check_security_pw: white target is not zero");
    }
    EchelonSystem base(s.n(), s.m);
    for (int r = 0; r < s.t(); ++r) {
        base.add_row(BitMatrix::hstack(s.qualified.matrix.row(r), s.b1[0].row(r)));
    }
    auto passes = [&](const Subset& f) {
        if (f.empty()) {
            return true;
        }
        auto m = base.mark();
        for (int p : f) {
            base.add_selector_row({p});
        }
        bool ok = base.consistent();
        base.rollback(m);
        return ok;
    };
    for (const Subset& f : fam.maximal_forbidden()) {
        if (!passes(f)) {
            return security_failure(s, f, passes);
        }
    }
    return SecurityReport{true, std::nullopt};
}

SchemeClass classify(const LinearScheme& s, const ForbiddenFamily& fam) {
    SchemeClass c;
    if (!s.well_formed) {
        c.diagnostic = s.defect;
        return c;
    }
    ContrastReport cr = check_contrast(s, /*with_details=*/false);
    if (!cr.pass) {
        c.diagnostic = "contrast: " + cr.failure->detail;
        return c;
    }
    SecurityReport sr = check_security(s, fam);
    if (!sr.pass) {
        c.diagnostic = "security: F=" + subset_string(sr.failure->f) + ": " + sr.failure->detail;
        return c;
    }
    bool white_same = all_equal(s.b0);
    bool black_same = all_equal(s.b1);
    if (white_same && black_same) {
        c.kind = SchemeKind::Sxvcs;
    } else if (white_same) {
        c.kind = SchemeKind::SemiWhite;
    } else if (black_same) {
        c.kind = SchemeKind::SemiBlack;
    } else {
        c.kind = SchemeKind::General;
    }
    c.perfect_white = white_same && s.b0[0].is_zero();
    return c;
}

LinearScheme insert(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                    const QualifiedMatrix& qualified) {
    if (c0.empty() || c1.empty()) {
        throw std::invalid_argument("insert: empty collection");
    }
    auto check = [&](const std::vector<BitMatrix>& c) {
        for (const BitMatrix& x : c) {
            if (x.rows() != qualified.n() || x.cols() != c0.front().cols()) {
                throw std::invalid_argument("insert: share matrix shape mismatch");
            }
        }
    };
    check(c0);
    check(c1);
    const std::size_t l = std::lcm(c0.size(), c1.size());
    std::vector<BitMatrix> b0, b1;
    for (std::size_t j = 0; j < l; ++j) {
        b0.push_back(qualified.matrix * c0[j % c0.size()]);
        b1.push_back(qualified.matrix * c1[j % c1.size()]);
    }
    return make_scheme(qualified, std::move(b0), std::move(b1));
}

LinearScheme to_perfect_white(const LinearScheme& s, const ForbiddenFamily& fam) {
    SchemeClass c = classify(s, fam);
    if (c.kind != SchemeKind::Sxvcs) {
        throw std::invalid_argument("to_perfect_white: scheme is not static (" + c.str() + ")");
    }
    BitMatrix b1 = s.b0[0] ^ s.b1[0];
    return make_scheme(s.qualified, {BitMatrix(s.t(), s.m)}, {std::move(b1)}, s.declared);
}

std::vector<LinearScheme> decompose_semi(const LinearScheme& s, const ForbiddenFamily& fam) {
    SchemeClass c = classify(s, fam);
    if (c.kind != SchemeKind::Sxvcs && c.kind != SchemeKind::SemiWhite &&
        c.kind != SchemeKind::SemiBlack) {
        throw std::invalid_argument("decompose_semi: scheme is not static on either color (" +
                                    c.str() + ")");
    }
    std::vector<LinearScheme> out;
    for (int j = 0; j < s.k; ++j) {
        if (c.kind == SchemeKind::SemiBlack) {
            out.push_back(make_scheme(s.qualified, {s.b0[static_cast<std::size_t>(j)]},
                                      {s.b1[0]}, s.declared));
        } else {
            out.push_back(make_scheme(s.qualified, {s.b0[0]},
                                      {s.b1[static_cast<std::size_t>(j)]}, s.declared));
        }
    }
    return out;
}

LinearScheme to_pxvcs(const LinearScheme& s, const ForbiddenFamily& fam) {
    SchemeClass c = classify(s, fam);
    if (c.kind != SchemeKind::Sxvcs) {
        throw std::invalid_argument("to_pxvcs: scheme is not static (" + c.str() + ")");
    }
    std::vector<BitMatrix> b0, b1;
    for (int col = 0; col < s.m; ++col) {
        b0.push_back(s.b0[0].col(col));
        b1.push_back(s.b1[0].col(col));
    }
    return make_scheme(s.qualified, std::move(b0), std::move(b1), s.declared);
}

Rational pxvcs_contrast_bound(int n) {
    if (n < 2) {
        throw std::invalid_argument("pxvcs_contrast_bound: n must be at least 2");
    }
    std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    return Rational(static_cast<std::int64_t>(n / 2) * ((n + 1) / 2), pairs);
}

Rational average_pair_contrast(const PixelDistribution& d) {
    if (d.n < 2) {
        throw std::invalid_argument("average_pair_contrast: n must be at least 2");
    }
    Rational total(0);
    Rational sum(0);
    for (const auto& [v, p] : d.support) {
        if (v.rows() != d.n || v.cols() != 1) {
            throw std::invalid_argument("average_pair_contrast: support vector shape mismatch");
        }
        int w = 0;
        for (int r = 0; r < d.n; ++r) {
            w += v.get(r, 0) ? 1 : 0;
        }
        sum += p * Rational(static_cast<std::int64_t>(w) * (d.n - w));
        total += p;
    }
    if (!(total == Rational(1))) {
        throw std::invalid_argument("average_pair_contrast: probabilities must sum to 1");
    }
    return sum / Rational(static_cast<std::int64_t>(d.n) * (d.n - 1) / 2);
}

}  // namespace xvcs
