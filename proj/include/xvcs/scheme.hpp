#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xvcs/access.hpp"
#include "xvcs/bitmatrix.hpp"
#include "xvcs/gf2solve.hpp"
#include "xvcs/rational.hpp"

namespace xvcs {

struct UndeterminedStack : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An XVCS in linear-system form: one coefficient matrix (the qualified
// matrix) with k white targets b0[j] and k black targets b1[j]. The solution
// set of each system is a coset of the shared homogeneous space; the white
// and black collections are the disjoint unions over j.
struct LinearScheme {
    QualifiedMatrix qualified;
    std::vector<BitMatrix> b0;       // k matrices, t x m
    std::vector<BitMatrix> b1;       // k matrices, t x m
    int m = 0;                       // pixel expansion
    int k = 0;                       // systems per color
    std::vector<Subset> declared;    // qualified sets evaluated for contrast

    bool well_formed = false;
    std::string defect;              // set when not well formed

    std::vector<SolveResult> white;  // per-system solutions, shared nullspace
    std::vector<SolveResult> black;
    EchelonSystem stacks{0, 0};      // [qualified | all targets], for stack queries

    int n() const { return qualified.n(); }
    int t() const { return qualified.t(); }
    const std::vector<BitMatrix>& nullspace() const { return white.front().nullspace; }
};

// Validates shapes, solves all 2k systems in one elimination pass and caches
// the shared nullspace. A scheme with an inconsistent system is returned with
// well_formed = false rather than rejected, so that verification can name the
// defective system.
LinearScheme make_scheme(QualifiedMatrix qualified, std::vector<BitMatrix> b0,
                         std::vector<BitMatrix> b1,
                         std::optional<std::vector<Subset>> declared = std::nullopt);

enum class SchemeKind { NotAScheme, Sxvcs, SemiWhite, SemiBlack, General };

struct SchemeClass {
    SchemeKind kind = SchemeKind::NotAScheme;
    bool perfect_white = false;  // the common white target is all-zero
    std::string diagnostic;      // failing condition when NotAScheme

    std::string str() const;
};
SchemeClass scheme_class_from_string(const std::string& s);  // parses str() output

// Reconstruction row(s) for one qualified set: e_i[j] is the stacked result
// under system j. Throws UndeterminedStack when the set's indicator vector is
// outside the row space of the qualified matrix.
struct StackResult {
    std::vector<BitMatrix> e0;  // k rows, 1 x m
    std::vector<BitMatrix> e1;
    bool static_white = true;   // all e0 equal
    bool static_black = true;
};
StackResult stack_result(const LinearScheme& s, const Subset& q);

struct ContrastFailure {
    Subset q;
    int system_white = -1;  // offending (i, j) pair, -1 when not applicable
    int system_black = -1;
    std::string detail;
};

struct PerQContrast {
    Subset q;
    Rational alpha;
    std::vector<BitMatrix> e0, e1;  // per-system stacks
    bool is_static = false;
};

struct ContrastReport {
    bool pass = false;
    Rational average;
    Rational min_alpha;
    std::vector<PerQContrast> per_q;  // filled only in detail mode
    std::optional<ContrastFailure> failure;
};

// Pointwise separation: every white stack strictly below every black stack,
// per target row and per declared qualified set.
ContrastReport check_contrast(const LinearScheme& s, bool with_details = true);

// Averaged separation per qualified set (the probabilistic-scheme sense):
// mean white weight < mean black weight.
ContrastReport check_contrast_average(const LinearScheme& s, bool with_details = true);

struct SecurityFailure {
    Subset f;            // minimal failing forbidden set
    std::string detail;  // restricted collections or unmatched representative
};

struct SecurityReport {
    bool pass = false;
    std::optional<SecurityFailure> failure;
};

// Restriction indistinguishability over the maximal forbidden sets (equality
// is inherited downward by subsets). k = 1 uses block-system consistency;
// k > 1 compares multisets of canonical coset representatives.
SecurityReport check_security(const LinearScheme& s, const ForbiddenFamily& fam);

// The reduced test available when k = 1 and the white target is zero: the
// qualified matrix stacked over each selector must stay consistent with the
// black target over zeros.
SecurityReport check_security_pw(const LinearScheme& s, const ForbiddenFamily& fam);

SchemeClass classify(const LinearScheme& s, const ForbiddenFamily& fam);

// Embeds explicit share-matrix collections into linear-system form. Collection
// sizes are first equalized by replication to their lcm; the j-th system's
// target is the qualified matrix times the j-th matrix.
LinearScheme insert(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                    const QualifiedMatrix& qualified);

// For a static scheme, the color-offset rewrite that zeroes the white target
// (b0' = 0, b1' = b0 ^ b1) without changing pixel expansion or contrast.
LinearScheme to_perfect_white(const LinearScheme& s, const ForbiddenFamily& fam);

// Splits a scheme that is static on one color into its k single-system static
// schemes (the static color's common target paired with each of the others).
std::vector<LinearScheme> decompose_semi(const LinearScheme& s, const ForbiddenFamily& fam);

// Column-split view of a static scheme: m single-column systems with pixel
// expansion 1. Pointwise contrast is generally lost; the averaged contrast per
// qualified set is preserved exactly.
LinearScheme to_pxvcs(const LinearScheme& s, const ForbiddenFamily& fam);

// Upper bound on the average contrast of any pairwise scheme on n parties
// with pixel expansion 1: floor(n/2)*ceil(n/2) / C(n,2).
Rational pxvcs_contrast_bound(int n);

// A distribution over share columns (one subpixel per participant).
struct PixelDistribution {
    int n = 0;
    std::vector<std::pair<BitMatrix, Rational>> support;  // (n x 1 column, probability)
};

// Average pairwise contrast of a column distribution with perfect white
// reconstruction: sum over the support of p(v) * w(v) * (n - w(v)) / C(n,2).
Rational average_pair_contrast(const PixelDistribution& d);

// --- test-support helpers -------------------------------------------------

// Echelon basis of the nullspace restricted to rows f.
std::vector<BitMatrix> restricted_basis(const std::vector<BitMatrix>& nullspace, const Subset& f);

// Unique coset representative of x[f] modulo the restricted homogeneous
// space (zeros at all pivot positions of the restricted basis).
BitMatrix canonical_restricted(const BitMatrix& x, const Subset& f,
                               const std::vector<BitMatrix>& rbasis);

}  // namespace xvcs
