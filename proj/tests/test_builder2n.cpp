#include <doctest.h>

#include <set>

#include "xvcs/builder2n.hpp"
#include "xvcs/gf2solve.hpp"

using namespace xvcs;

namespace {

int ceil_log2(int n) {
    int m = 0;
    while ((1 << m) < n) {
        ++m;
    }
    return m == 0 ? 1 : m;
}

// brute check: every contiguous row range stacks to a nonzero vector
bool all_ranges_nonzero(const BitMatrix& b) {
    for (int l = 0; l < b.rows(); ++l) {
        BitMatrix acc(1, b.cols());
        for (int h = l; h < b.rows(); ++h) {
            acc.row_xor_from(0, b, h);
            if (acc.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::vector<BitMatrix> prefix_parities(const BitMatrix& b) {
    std::vector<BitMatrix> out;
    BitMatrix acc(1, b.cols());
    out.push_back(acc);
    for (int r = 0; r < b.rows(); ++r) {
        acc.row_xor_from(0, b, r);
        out.push_back(acc);
    }
    return out;
}

}  // namespace

TEST_CASE("black target matrices for small n") {
    CHECK(optimal_2n_rhs(2) == BitMatrix::ones(1, 1));
    CHECK(optimal_2n_rhs(3) == BitMatrix::from_rows({"11", "01"}));
    CHECK(optimal_2n_rhs(4) == BitMatrix::from_rows({"11", "01", "11"}));
    CHECK(optimal_2n_rhs(5) == BitMatrix::from_rows({"111", "011", "111", "001"}));
    CHECK(optimal_2n_rhs(8) ==
          BitMatrix::from_rows({"111", "011", "111", "001", "111", "011", "111"}));
    CHECK_THROWS_AS(optimal_2n_rhs(1), std::invalid_argument);
}

TEST_CASE("prefix pass reproduces the per-n matrices") {
    auto prefixes = optimal_2n_rhs_prefixes(12);
    REQUIRE(prefixes.size() == 11);
    for (int n = 2; n <= 12; ++n) {
        CHECK(prefixes[static_cast<std::size_t>(n - 2)] == optimal_2n_rhs(n));
        CHECK(all_ranges_nonzero(prefixes[static_cast<std::size_t>(n - 2)]));
    }
}

TEST_CASE("pixel expansion is the log bound for all n up to 4096") {
    auto prefixes = optimal_2n_rhs_prefixes(4096);
    for (int n = 2; n <= 4096; ++n) {
        const BitMatrix& b = prefixes[static_cast<std::size_t>(n - 2)];
        CHECK(b.cols() == ceil_log2(n));
        CHECK(b.rows() == n - 1);
    }
}

TEST_CASE("contiguous stacks nonzero (direct check up to 64)") {
    for (int n = 2; n <= 64; ++n) {
        CAPTURE(n);
        CHECK(all_ranges_nonzero(optimal_2n_rhs(n)));
    }
}

TEST_CASE("prefix parities are pairwise distinct and per-column balanced") {
    auto prefixes = optimal_2n_rhs_prefixes(512);
    for (int n = 2; n <= 512; ++n) {
        const BitMatrix& b = prefixes[static_cast<std::size_t>(n - 2)];
        auto parities = prefix_parities(b);
        std::set<BitMatrix> uniq(parities.begin(), parities.end());
        CHECK(uniq.size() == parities.size());
        // per column: z zeros among prefix parities give z*(n-z) odd ranges,
        // and the construction attains the balanced maximum
        for (int c = 0; c < b.cols(); ++c) {
            int zeros = 0;
            for (const BitMatrix& p : parities) {
                zeros += p.get(0, c) ? 0 : 1;
            }
            CHECK(static_cast<std::int64_t>(zeros) * (n - zeros) ==
                  static_cast<std::int64_t>(n / 2) * ((n + 1) / 2));
        }
    }
}

TEST_CASE("complete scheme for n=2") {
    LinearScheme s = build_optimal_2n(2);
    CHECK(s.m == 1);
    auto white = enumerate_solutions(s.white[0]);
    auto black = enumerate_solutions(s.black[0]);
    std::set<std::string> w, b;
    for (const auto& x : white) {
        w.insert(x.flat_string());
    }
    for (const auto& x : black) {
        b.insert(x.flat_string());
    }
    CHECK(w == std::set<std::string>{"00", "11"});
    CHECK(b == std::set<std::string>{"01", "10"});
    ContrastReport r = check_contrast(s);
    CHECK(r.average == Rational(1));
}

TEST_CASE("complete scheme parameters for small n") {
    ForbiddenFamily fam4 = forbidden_family(threshold_structure(2, 4));
    LinearScheme s4 = build_optimal_2n(4);
    SchemeClass c4 = classify(s4, fam4);
    CHECK(c4.kind == SchemeKind::Sxvcs);
    CHECK(c4.perfect_white);
    ContrastReport r4 = check_contrast(s4);
    CHECK(s4.m == 2);
    CHECK(r4.average == Rational(4, 6));
    CHECK(r4.min_alpha == Rational(1, 2));

    LinearScheme s5 = build_optimal_2n(5);
    ContrastReport r5 = check_contrast(s5);
    CHECK(r5.average == Rational(6, 10));
}

TEST_CASE("static reconstruction: pair stacks equal the row-range XOR") {
    LinearScheme s = build_optimal_2n(7);
    const BitMatrix& b1 = s.b1[0];
    for (int i = 0; i < 7; ++i) {
        for (int j = i + 1; j < 7; ++j) {
            StackResult st = stack_result(s, {i, j});
            BitMatrix expected(1, s.m);
            for (int r = i; r < j; ++r) {
                expected.row_xor_from(0, b1, r);
            }
            CHECK(st.e1[0] == expected);
            CHECK(st.e0[0].is_zero());
        }
    }
}

TEST_CASE("single-share restrictions are the full row space") {
    LinearScheme s = build_optimal_2n(6);
    for (int p = 0; p < 6; ++p) {
        Subset f = {p};
        auto rbasis = restricted_basis(s.nullspace(), f);
        // the one-row restriction of the homogeneous space is everything,
        // so both canonical representatives reduce to zero
        CHECK(rbasis.size() == 1);
        CHECK(canonical_restricted(s.white[0].particular, f, rbasis) == BitMatrix(1, s.m));
        CHECK(canonical_restricted(s.black[0].particular, f, rbasis) == BitMatrix(1, s.m));
    }
}

TEST_CASE("average contrast attains the bound for all n up to 64") {
    for (int n = 2; n <= 64; ++n) {
        LinearScheme s = build_optimal_2n(n);
        ContrastReport r = check_contrast(s, /*with_details=*/false);
        REQUIRE(r.pass);
        CHECK(r.average == pxvcs_contrast_bound(n));
        CHECK(r.min_alpha >= Rational(1, s.m));
    }
}
