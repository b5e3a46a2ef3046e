#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "xvcs/builder2n.hpp"
#include "xvcs/oracle.hpp"
#include "xvcs/scheme.hpp"

using namespace xvcs;

namespace {

LinearScheme pair23_scheme() {
    QualifiedMatrix q = threshold_structure(2, 3).qualified_matrix();
    return make_scheme(q, {BitMatrix(3, 2)},
                       {BitMatrix::from_rows({"10", "01", "11"})});
}

std::set<BitMatrix> solution_set(const LinearScheme& s, int color, int j) {
    const SolveResult& r = color == 0 ? s.white[static_cast<std::size_t>(j)]
                                      : s.black[static_cast<std::size_t>(j)];
    auto v = enumerate_solutions(r);
    return {v.begin(), v.end()};
}

std::multiset<BitMatrix> solution_multiset(const LinearScheme& s, int color) {
    std::multiset<BitMatrix> out;
    for (int j = 0; j < s.k; ++j) {
        const SolveResult& r = color == 0 ? s.white[static_cast<std::size_t>(j)]
                                          : s.black[static_cast<std::size_t>(j)];
        for (const BitMatrix& x : enumerate_solutions(r)) {
            out.insert(x);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(3).str() == "3");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("pairwise scheme on 3 participants, expansion 2") {
    LinearScheme s = pair23_scheme();
    REQUIRE(s.well_formed);
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 3));

    SUBCASE("contrast report") {
        ContrastReport r = check_contrast(s);
        REQUIRE(r.pass);
        REQUIRE(r.per_q.size() == 3);
        CHECK(r.per_q[0].alpha == Rational(1, 2));
        CHECK(r.per_q[1].alpha == Rational(1, 2));
        CHECK(r.per_q[2].alpha == Rational(1));
        CHECK(r.average == Rational(2, 3));
        CHECK(r.min_alpha == Rational(1, 2));
    }

    SUBCASE("solution sets match the known collections") {
        std::set<BitMatrix> white = solution_set(s, 0, 0);
        std::set<BitMatrix> expected_white = {
            BitMatrix::from_rows({"11", "11", "11"}), BitMatrix::from_rows({"01", "01", "01"}),
            BitMatrix::from_rows({"10", "10", "10"}), BitMatrix::from_rows({"00", "00", "00"})};
        CHECK(white == expected_white);

        std::set<BitMatrix> black = solution_set(s, 1, 0);
        std::set<BitMatrix> expected_black = {
            BitMatrix::from_rows({"11", "01", "10"}), BitMatrix::from_rows({"01", "11", "00"}),
            BitMatrix::from_rows({"10", "00", "11"}), BitMatrix::from_rows({"00", "10", "01"})};
        CHECK(black == expected_black);
    }

    SUBCASE("security passes both routes") {
        CHECK(check_security(s, fam).pass);
        CHECK(check_security_pw(s, fam).pass);
    }

    SUBCASE("classification") {
        SchemeClass c = classify(s, fam);
        CHECK(c.kind == SchemeKind::Sxvcs);
        CHECK(c.perfect_white);
        CHECK(c.str() == "SXVCS+PW");
    }
}

TEST_CASE("security counterexample: 4 participants, expansion 1") {
    QualifiedMatrix q;
    q.matrix = BitMatrix::from_rows({"1110", "1101", "0111"});
    q.row_sets = {{0, 1, 2}, {0, 1, 3}, {1, 2, 3}};
    LinearScheme s = make_scheme(q, {BitMatrix(3, 1)}, {BitMatrix::ones(3, 1)});
    REQUIRE(s.well_formed);
    CHECK(check_contrast(s).pass);

    AccessStructure structure(4, q.row_sets);
    SecurityReport r = check_security(s, forbidden_family(structure));
    REQUIRE(!r.pass);
    REQUIRE(r.failure);
    CHECK(r.failure->f == Subset{1});
    CHECK(r.failure->detail == "S0[F]={0,0} != S1[F]={1,1}");

    SchemeClass c = classify(s, forbidden_family(structure));
    CHECK(c.kind == SchemeKind::NotAScheme);
    CHECK(c.diagnostic.find("F={2}") != std::string::npos);
}

TEST_CASE("contrast failure: equal targets") {
    QualifiedMatrix q = threshold_structure(2, 3).qualified_matrix();
    BitMatrix b = BitMatrix::from_rows({"10", "01", "11"});
    LinearScheme s = make_scheme(q, {b}, {b});
    ContrastReport r = check_contrast(s);
    CHECK(!r.pass);
    REQUIRE(r.failure);
    CHECK(r.failure->q == Subset{0, 1});  // first row already fails
}

TEST_CASE("pairwise scheme on 3 participants, expansion 3, nonzero white target") {
    QualifiedMatrix q = threshold_structure(2, 3).qualified_matrix();
    BitMatrix b0 = BitMatrix::from_rows({"001", "000", "001"});
    BitMatrix b1 = BitMatrix::from_rows({"101", "010", "111"});
    LinearScheme s = make_scheme(q, {b0}, {b1});
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 3));

    ContrastReport cr = check_contrast(s);
    CHECK(cr.pass);
    CHECK(check_security(s, fam).pass);
    SchemeClass c = classify(s, fam);
    CHECK(c.kind == SchemeKind::Sxvcs);
    CHECK(!c.perfect_white);

    SUBCASE("white-zero rewrite") {
        LinearScheme pw = to_perfect_white(s, fam);
        CHECK(pw.b0[0].is_zero());
        CHECK(pw.b1[0] == BitMatrix::from_rows({"100", "010", "110"}));
        SchemeClass pc = classify(pw, fam);
        CHECK(pc.kind == SchemeKind::Sxvcs);
        CHECK(pc.perfect_white);
        CHECK(check_security_pw(pw, fam).pass);

        // contrast values preserved exactly, per qualified set
        ContrastReport before = check_contrast(s);
        ContrastReport after = check_contrast(pw);
        REQUIRE(before.per_q.size() == after.per_q.size());
        for (std::size_t i = 0; i < before.per_q.size(); ++i) {
            CHECK(before.per_q[i].alpha == after.per_q[i].alpha);
        }
        // already-zero white target is a fixed point
        LinearScheme pw2 = to_perfect_white(pw, fam);
        CHECK(pw2.b0[0] == pw.b0[0]);
        CHECK(pw2.b1[0] == pw.b1[0]);
    }

    SUBCASE("rewrite rejects invalid schemes") {
        LinearScheme bad = make_scheme(q, {b0}, {b0});
        CHECK_THROWS_AS(to_perfect_white(bad, fam), std::invalid_argument);
    }
}

TEST_CASE("stack_result") {
    LinearScheme s = pair23_scheme();
    SUBCASE("single qualified row") {
        StackResult st = stack_result(s, {0, 1});
        CHECK(st.e0[0] == BitMatrix(1, 2));
        CHECK(st.e1[0] == BitMatrix::from_rows({"10"}));
    }
    SUBCASE("combination of rows") {
        // {1,2} xor {1,3} selects {2,3}
        StackResult st = stack_result(s, {1, 2});
        CHECK(st.e1[0] == BitMatrix::from_rows({"11"}));
        CHECK(st.e0[0].is_zero());
    }
    SUBCASE("undetermined set") {
        CHECK_THROWS_AS(stack_result(s, {0}), UndeterminedStack);
    }
    SUBCASE("chain system: non-adjacent pair") {
        LinearScheme p5 = build_optimal_2n(5);
        StackResult st = stack_result(p5, {0, 2});
        BitMatrix expected = p5.b1[0].row(0) ^ p5.b1[0].row(1);
        CHECK(st.e1[0] == expected);
    }
}

TEST_CASE("insert") {
    SUBCASE("all-or-nothing structure") {
        for (int n : {2, 3, 4, 5}) {
            QualifiedMatrix q = threshold_structure(n, n).qualified_matrix();
            LinearScheme s =
                insert({BitMatrix(n, 1)}, {BitMatrix::ones(n, 1)}, q);
            CHECK(s.b0[0].is_zero());
            bool odd = n % 2 == 1;
            CHECK(s.b1[0] == (odd ? BitMatrix::ones(1, 1) : BitMatrix(1, 1)));
        }
    }
    SUBCASE("re-inserting the solution sets reproduces the targets") {
        LinearScheme s = pair23_scheme();
        std::vector<BitMatrix> c0, c1;
        for (const BitMatrix& x : enumerate_solutions(s.white[0])) {
            c0.push_back(x);
        }
        for (const BitMatrix& x : enumerate_solutions(s.black[0])) {
            c1.push_back(x);
        }
        LinearScheme again = insert(c0, c1, s.qualified);
        CHECK(again.k == 4);
        for (const BitMatrix& b : again.b0) {
            CHECK(b == s.b0[0]);
        }
        for (const BitMatrix& b : again.b1) {
            CHECK(b == s.b1[0]);
        }
        CHECK(solution_set(again, 0, 0) == solution_set(s, 0, 0));
        CHECK(solution_set(again, 1, 0) == solution_set(s, 1, 0));
        ForbiddenFamily fam = forbidden_family(threshold_structure(2, 3));
        CHECK(classify(again, fam).kind == SchemeKind::Sxvcs);
    }
    SUBCASE("unequal collection sizes replicate to the lcm") {
        QualifiedMatrix q = threshold_structure(2, 2).qualified_matrix();
        std::vector<BitMatrix> c0 = {BitMatrix(2, 1), BitMatrix::ones(2, 1)};
        std::vector<BitMatrix> c1 = {BitMatrix::from_rows({"1", "0"}),
                                     BitMatrix::from_rows({"0", "1"}),
                                     BitMatrix::from_rows({"1", "0"})};
        LinearScheme s = insert(c0, c1, q);
        CHECK(s.k == 6);
    }
    SUBCASE("shape mismatch rejected") {
        QualifiedMatrix q = threshold_structure(2, 2).qualified_matrix();
        CHECK_THROWS_AS(insert({BitMatrix(3, 1)}, {BitMatrix(2, 1)}, q), std::invalid_argument);
        CHECK_THROWS_AS(insert({}, {BitMatrix(2, 1)}, q), std::invalid_argument);
    }
}

TEST_CASE("one-sided static schemes decompose into static schemes") {
    // two distinct valid black targets over the chain system of (2,4)
    QualifiedMatrix q = path_matrix(4);
    std::vector<Subset> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    BitMatrix b1a = BitMatrix::from_rows({"11", "01", "11"});
    BitMatrix b1b = BitMatrix::from_rows({"11", "10", "11"});
    LinearScheme semi = make_scheme(q, {BitMatrix(3, 2), BitMatrix(3, 2)}, {b1a, b1b}, pairs);
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 4));

    SchemeClass c = classify(semi, fam);
    CHECK(c.kind == SchemeKind::SemiWhite);
    CHECK(c.perfect_white);

    std::vector<LinearScheme> parts = decompose_semi(semi, fam);
    REQUIRE(parts.size() == 2);
    std::multiset<BitMatrix> white_union, black_union;
    for (const LinearScheme& p : parts) {
        SchemeClass pc = classify(p, fam);
        CHECK(pc.kind == SchemeKind::Sxvcs);
        for (const BitMatrix& x : enumerate_solutions(p.white[0])) {
            white_union.insert(x);
        }
        for (const BitMatrix& x : enumerate_solutions(p.black[0])) {
            black_union.insert(x);
        }
    }
    CHECK(white_union == solution_multiset(semi, 0));
    CHECK(black_union == solution_multiset(semi, 1));

    // cross-check against the enumerating reference
    std::vector<BitMatrix> c0, c1;
    for (const BitMatrix& x : white_union) {
        c0.push_back(x);
    }
    for (const BitMatrix& x : black_union) {
        c1.push_back(x);
    }
    AccessStructure s24(4, pairs);
    OracleVerdict v = oracle_classify(c0, c1, s24);
    CHECK(v.xvcs);
    CHECK(v.semi_white);
    CHECK(!v.sxvcs);
    CHECK(v.perfect_white);
}

TEST_CASE("black-side one-sided static scheme") {
    QualifiedMatrix q = threshold_structure(2, 2).qualified_matrix();
    BitMatrix b1 = BitMatrix::ones(1, 2);
    LinearScheme semi = make_scheme(
        q, {BitMatrix(1, 2), BitMatrix::from_rows({"10"})}, {b1, b1}, std::nullopt);
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 2));
    SchemeClass c = classify(semi, fam);
    CHECK(c.kind == SchemeKind::SemiBlack);
    CHECK(!c.perfect_white);

    std::vector<LinearScheme> parts = decompose_semi(semi, fam);
    REQUIRE(parts.size() == 2);
    for (const LinearScheme& p : parts) {
        CHECK(classify(p, fam).kind == SchemeKind::Sxvcs);
    }
}

TEST_CASE("decomposition rejects schemes static on neither color") {
    QualifiedMatrix q = threshold_structure(2, 2).qualified_matrix();
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 2));
    LinearScheme general = make_scheme(
        q, {BitMatrix(1, 3), BitMatrix::from_rows({"100"})},
        {BitMatrix::from_rows({"110"}), BitMatrix::from_rows({"011"})}, std::nullopt);
    CHECK(classify(general, fam).kind == SchemeKind::General);
    CHECK_THROWS_AS(decompose_semi(general, fam), std::invalid_argument);
}

TEST_CASE("single-system scheme decomposes to itself") {
    LinearScheme s = pair23_scheme();
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 3));
    std::vector<LinearScheme> parts = decompose_semi(s, fam);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].b0 == s.b0);
    CHECK(parts[0].b1 == s.b1);
}

TEST_CASE("column split preserves averaged contrast") {
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 4));
    LinearScheme s = build_optimal_2n(4);
    LinearScheme p = to_pxvcs(s, fam);
    CHECK(p.m == 1);
    CHECK(p.k == 2);
    ContrastReport avg = check_contrast_average(p, /*with_details=*/false);
    CHECK(avg.pass);
    CHECK(avg.average == Rational(4, 6));
    CHECK(avg.average == check_contrast(s, false).average);

    // single-column input is unchanged
    LinearScheme s2 = build_optimal_2n(2);
    ForbiddenFamily fam2 = forbidden_family(threshold_structure(2, 2));
    LinearScheme p2 = to_pxvcs(s2, fam2);
    CHECK(p2.k == 1);
    CHECK(p2.b1 == s2.b1);
}

TEST_CASE("average-contrast bound") {
    CHECK(pxvcs_contrast_bound(2) == Rational(1));
    CHECK(pxvcs_contrast_bound(5) == Rational(6, 10));
    CHECK(pxvcs_contrast_bound(8) == Rational(16, 28));
    CHECK_THROWS_AS(pxvcs_contrast_bound(1), std::invalid_argument);
}

TEST_CASE("pixel distribution contrast") {
    PixelDistribution d;
    d.n = 4;
    d.support.push_back({BitMatrix::from_rows({"1", "1", "0", "0"}), Rational(1, 2)});
    d.support.push_back({BitMatrix::from_rows({"0", "0", "1", "1"}), Rational(1, 2)});
    CHECK(average_pair_contrast(d) == Rational(4, 6));

    PixelDistribution bad = d;
    bad.support.pop_back();
    CHECK_THROWS_AS(average_pair_contrast(bad), std::invalid_argument);
}

TEST_CASE("property: the two security routes agree on white-zero schemes") {
    std::mt19937_64 eng(21);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(eng() % 4);  // up to 5
        int k = 1 + static_cast<int>(eng() % std::min(n, 3));
        int m = 1 + static_cast<int>(eng() % 3);
        AccessStructure s = threshold_structure(k, n);
        QualifiedMatrix q = s.qualified_matrix();
        // consistent random black target
        BitMatrix x(n, m);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < m; ++c) {
                x.set(r, c, eng() & 1u);
            }
        }
        BitMatrix b1 = q.matrix * x;
        LinearScheme scheme = make_scheme(q, {BitMatrix(q.t(), m)}, {b1});
        ForbiddenFamily fam = forbidden_family(s);
        SecurityReport full = check_security(scheme, fam);
        SecurityReport pw = check_security_pw(scheme, fam);
        CHECK(full.pass == pw.pass);
        if (!full.pass) {
            CHECK(full.failure->f == pw.failure->f);
        }
    }
}

TEST_CASE("property: block-system verdict matches pairwise restriction search") {
    // consistency of the combined system is equivalent to some white and some
    // black solution agreeing on the restricted rows
    std::mt19937_64 eng(31);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(eng() % 3);
        int rows = 1 + static_cast<int>(eng() % 3);
        BitMatrix gamma(rows, n);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < n; ++c) {
                gamma.set(r, c, eng() & 1u);
            }
        }
        QualifiedMatrix q;
        q.matrix = gamma;
        bool bad_rows = false;
        for (int r = 0; r < rows; ++r) {
            Subset set;
            for (int c = 0; c < n; ++c) {
                if (gamma.get(r, c)) {
                    set.push_back(c);
                }
            }
            if (set.empty()) {
                bad_rows = true;
                break;
            }
            q.row_sets.push_back(set);
        }
        if (bad_rows) {
            continue;
        }
        BitMatrix x0(n, 1), x1(n, 1);
        for (int r = 0; r < n; ++r) {
            x0.set(r, 0, eng() & 1u);
            x1.set(r, 0, eng() & 1u);
        }
        LinearScheme s = make_scheme(q, {gamma * x0}, {gamma * x1});
        Subset f;
        for (int p = 0; p < n; ++p) {
            if (eng() & 1u) {
                f.push_back(p);
            }
        }
        if (f.empty()) {
            continue;
        }
        // route 1: stacked block system consistency via a one-set family
        ForbiddenFamily single(n, {f}, q.row_sets);
        bool block_ok = check_security(s, single).pass;
        // route 2: literal search over both solution sets
        bool found = false;
        for (const BitMatrix& a : enumerate_solutions(s.white[0])) {
            for (const BitMatrix& b : enumerate_solutions(s.black[0])) {
                found = found || a.select_rows(f) == b.select_rows(f);
            }
        }
        CHECK(block_ok == found);
    }
}

TEST_CASE("property: static schemes have fixed stacks across the whole collection") {
    LinearScheme s = pair23_scheme();
    for (const Subset& q : s.declared) {
        StackResult st = stack_result(s, q);
        for (const BitMatrix& x : enumerate_solutions(s.white[0])) {
            BitMatrix stacked(1, s.m);
            for (int p : q) {
                stacked.row_xor_from(0, x, p);
            }
            CHECK(stacked == st.e0[0]);
        }
    }
}

TEST_CASE("ill-formed scheme is reported, not crashed") {
    QualifiedMatrix q = threshold_structure(2, 2).qualified_matrix();
    QualifiedMatrix dup;
    dup.matrix = BitMatrix::from_rows({"11", "11"});
    dup.row_sets = {{0, 1}, {0, 1}};
    LinearScheme s = make_scheme(dup, {BitMatrix(2, 1)},
                                 {BitMatrix::from_rows({"1", "0"})});
    CHECK(!s.well_formed);
    CHECK(s.defect.find("inconsistent") != std::string::npos);
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 2));
    CHECK(classify(s, fam).kind == SchemeKind::NotAScheme);
    (void)q;
}

TEST_CASE("no black target passes the white-zero security check on (3,4)") {
    AccessStructure s34 = threshold_structure(3, 4);
    QualifiedMatrix q = s34.qualified_matrix();
    ForbiddenFamily fam = forbidden_family(s34);
    for (int m = 1; m <= 2; ++m) {
        for (std::uint32_t bits = 1; bits < (std::uint32_t(1) << (4 * m)); ++bits) {
            BitMatrix b1(4, m);
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < m; ++c) {
                    if ((bits >> (r * m + c)) & 1u) {
                        b1.set(r, c, true);
                    }
                }
            }
            bool rows_nonzero = true;
            for (int r = 0; r < 4; ++r) {
                rows_nonzero = rows_nonzero && !b1.row_is_zero(r);
            }
            if (!rows_nonzero) {
                continue;
            }
            LinearScheme s = make_scheme(q, {BitMatrix(4, m)}, {b1});
            REQUIRE(s.well_formed);  // the (3,4) qualified matrix has full rank
            CHECK(!check_security_pw(s, fam).pass);
        }
    }
}

TEST_CASE("zero black target: security holds, contrast does not") {
    QualifiedMatrix q = threshold_structure(2, 3).qualified_matrix();
    LinearScheme s = make_scheme(q, {BitMatrix(3, 2)}, {BitMatrix(3, 2)});
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, 3));
    CHECK(check_security(s, fam).pass);
    CHECK(check_security_pw(s, fam).pass);
    CHECK(!check_contrast(s).pass);
    CHECK(classify(s, fam).kind == SchemeKind::NotAScheme);
}
