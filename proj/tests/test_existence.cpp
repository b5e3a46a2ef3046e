#include <doctest.h>

#include <cmath>
#include <random>

#include "xvcs/existence.hpp"
#include "xvcs/gf2solve.hpp"
#include "xvcs/scheme.hpp"

using namespace xvcs;

namespace {

int ceil_log2(int n) {
    int m = 0;
    while ((1 << m) < n) {
        ++m;
    }
    return m == 0 ? 1 : m;
}

// Independent route for the noise-free existence decision at a fixed pixel
// expansion: try every black target with nonzero rows and test the stacked
// selector system for every maximal forbidden set directly.
bool brute_exists_at(const AccessStructure& s, int m) {
    QualifiedMatrix q = s.qualified_matrix();
    const int t = q.t();
    REQUIRE(t * m <= 18);
    ForbiddenFamily fam = forbidden_family(s);
    for (std::uint32_t bits = 0; bits < (std::uint32_t(1) << (t * m)); ++bits) {
        BitMatrix b1(t, m);
        for (int r = 0; r < t; ++r) {
            for (int c = 0; c < m; ++c) {
                if ((bits >> (r * m + c)) & 1u) {
                    b1.set(r, c, true);
                }
            }
        }
        bool rows_ok = true;
        for (int r = 0; r < t; ++r) {
            rows_ok = rows_ok && !b1.row_is_zero(r);
        }
        if (!rows_ok) {
            continue;
        }
        bool all_consistent = true;
        for (const Subset& f : fam.maximal_forbidden()) {
            if (f.empty()) {
                all_consistent = all_consistent && gf2_solve(q.matrix, b1).consistent;
                continue;
            }
            BitMatrix a = BitMatrix::vstack(q.matrix, row_selector(f, q.n()));
            BitMatrix rhs = BitMatrix::vstack(b1, BitMatrix(static_cast<int>(f.size()), m));
            if (!gf2_solve(a, rhs).consistent) {
                all_consistent = false;
                break;
            }
        }
        if (all_consistent) {
            return true;
        }
    }
    return false;
}

std::vector<AccessStructure> small_structures() {
    std::vector<AccessStructure> out;
    for (int n = 2; n <= 4; ++n) {
        // every antichain of nonempty subsets of {1..n} with at most 4 sets
        std::vector<Subset> subsets;
        for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
            Subset s;
            for (int p = 0; p < n; ++p) {
                if (mask & (std::uint32_t(1) << p)) {
                    s.push_back(p);
                }
            }
            subsets.push_back(s);
        }
        const std::size_t count = subsets.size();
        for (std::uint32_t pick = 1; pick < (std::uint32_t(1) << count); ++pick) {
            if (std::popcount(pick) > 4) {
                continue;
            }
            std::vector<Subset> family;
            for (std::size_t i = 0; i < count; ++i) {
                if (pick & (std::uint32_t(1) << i)) {
                    family.push_back(subsets[i]);
                }
            }
            bool antichain = true;
            for (const auto& a : family) {
                for (const auto& b : family) {
                    if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                        antichain = false;
                    }
                }
            }
            if (antichain) {
                out.emplace_back(n, family);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("expansion-1 existence: known verdicts") {
    for (int n = 2; n <= 6; ++n) {
        ExistenceVerdict v = exists_expansion_one(threshold_structure(n, n));
        CHECK(v.exists);
        REQUIRE(v.certificate);
        CHECK(*v.certificate == BitMatrix::ones(1, 1));
    }
    ExistenceVerdict v23 = exists_expansion_one(threshold_structure(2, 3));
    CHECK(!v23.exists);
    REQUIRE(v23.witness_rows);
    CHECK(*v23.witness_rows == std::vector<int>{0, 1, 2});  // the three rows stack to zero

    CHECK_THROWS_AS(exists_expansion_one(threshold_structure(2, 10)), std::invalid_argument);
}

TEST_CASE("noise-free existence: pairwise structures") {
    for (int n = 2; n <= 8; ++n) {
        ExistenceVerdict v = exists_sxvcs(threshold_structure(2, n));
        CHECK(v.exists);
        REQUIRE(v.minimal_m);
        CHECK(*v.minimal_m == ceil_log2(n));
        CHECK(v.minimal_m_is_exact);
    }
}

TEST_CASE("noise-free existence: negative threshold cases") {
    ExistenceVerdict v34 = exists_sxvcs(threshold_structure(3, 4));
    CHECK(!v34.exists);
    REQUIRE(v34.forced_zero_row);

    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 5}, {4, 5}, {4, 6}}) {
        CHECK(!exists_sxvcs(threshold_structure(k, n)).exists);
    }
}

TEST_CASE("noise-free existence: all-or-nothing structures") {
    for (int n = 2; n <= 6; ++n) {
        ExistenceVerdict v = exists_sxvcs(threshold_structure(n, n));
        CHECK(v.exists);
        CHECK(*v.minimal_m == 1);
    }
}

TEST_CASE("certificates verify as perfect-white static schemes") {
    for (const AccessStructure& s : {threshold_structure(2, 3), threshold_structure(2, 5),
                                     threshold_structure(3, 3), threshold_structure(4, 4)}) {
        ExistenceVerdict v = exists_sxvcs(s);
        REQUIRE(v.exists);
        QualifiedMatrix q = s.qualified_matrix();
        LinearScheme scheme =
            make_scheme(q, {BitMatrix(q.t(), *v.minimal_m)}, {*v.certificate});
        SchemeClass c = classify(scheme, forbidden_family(s));
        CHECK(c.kind == SchemeKind::Sxvcs);
        CHECK(c.perfect_white);
        CHECK(scheme.m == *v.minimal_m);
    }
}

TEST_CASE("oracle cross-check over all small structures") {
    // the reformulated decision must match the exhaustive target search
    auto structures = small_structures();
    CHECK(structures.size() > 100);
    for (const AccessStructure& s : structures) {
        const int t = static_cast<int>(s.minimal_qualified().size());
        ExistenceVerdict v = exists_sxvcs(s);
        for (int m = 1; m <= 2; ++m) {
            if (t * m > 18) {
                continue;
            }
            bool brute = brute_exists_at(s, m);
            bool predicted = v.exists && *v.minimal_m <= m;
            CHECK(brute == predicted);
        }
    }
}

TEST_CASE("expansion-1 existence implies noise-free existence with a single column") {
    for (const AccessStructure& s : small_structures()) {
        if (s.minimal_qualified().size() > 20) {
            continue;
        }
        ExistenceVerdict e1 = exists_expansion_one(s);
        ExistenceVerdict sx = exists_sxvcs(s);
        if (e1.exists) {
            CHECK(sx.exists);
            CHECK(*sx.minimal_m == 1);
        }
        if (sx.exists && *sx.minimal_m == 1) {
            CHECK(e1.exists);
        }
    }
}

TEST_CASE("derived structures preserve noise-free existence") {
    std::mt19937_64 eng(17);
    std::vector<AccessStructure> bases = {threshold_structure(2, 3), threshold_structure(2, 4),
                                          threshold_structure(3, 3), threshold_structure(2, 2)};
    for (int trial = 0; trial < 10; ++trial) {
        const AccessStructure& base = bases[trial % bases.size()];
        std::vector<int> mult(static_cast<std::size_t>(base.n()));
        for (int& m : mult) {
            m = 1 + static_cast<int>(eng() % 3);
        }
        AccessStructure derived = derive_structure(base, mult);
        REQUIRE(exists_sxvcs(base).exists);
        CHECK(exists_sxvcs(derived).exists);
    }
}
