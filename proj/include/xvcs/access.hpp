#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "xvcs/bitmatrix.hpp"

namespace xvcs {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

// A participant subset, 0-based sorted indices.
using Subset = std::vector<int>;

std::string subset_string(const Subset& s);  // "{1,3}", 1-based for display
BitMatrix indicator_row(const Subset& s, int n);

struct QualifiedMatrix {
    BitMatrix matrix;             // t x n, row i = indicator of row_sets[i]
    std::vector<Subset> row_sets;

    int t() const { return matrix.rows(); }
    int n() const { return matrix.cols(); }
};

// Participant count plus the minimal qualified family (an antichain). The
// family used by constructions defaults to the minimal one; an explicit
// declared list can widen the sets evaluated for contrast.
class AccessStructure {
  public:
    AccessStructure(int n, std::vector<Subset> minimal_qualified,
                    std::optional<std::vector<Subset>> declared = std::nullopt);

    int n() const { return n_; }
    const std::vector<Subset>& minimal_qualified() const { return minimal_; }
    const std::vector<Subset>& declared_qualified() const {
        return declared_ ? *declared_ : minimal_;
    }

    // All sets of the minimal family have size k and every size-k subset is
    // present; enables closed-form maximal-forbidden computation.
    std::optional<int> threshold_k() const { return threshold_k_; }

    QualifiedMatrix qualified_matrix() const;  // rows = minimal family, in stored order

  private:
    int n_;
    std::vector<Subset> minimal_;
    std::optional<std::vector<Subset>> declared_;
    std::optional<int> threshold_k_;
};

struct ParsedStructure {
    AccessStructure structure;
    std::vector<std::string> warnings;  // e.g. non-minimal input sets dropped
};

// Text format: first non-comment line "n=<int>", then one set per line as
// "{i,j,...}" with 1-based indices. '#' starts a comment.
ParsedStructure parse_structure(std::string_view text);

AccessStructure threshold_structure(int k, int n);

class ForbiddenFamily {
  public:
    ForbiddenFamily(int n, std::vector<Subset> maximal, std::vector<Subset> minimal_qualified)
        : n_(n), maximal_(std::move(maximal)), minimal_qualified_(std::move(minimal_qualified)) {}

    int n() const { return n_; }
    const std::vector<Subset>& maximal_forbidden() const { return maximal_; }
    // F is forbidden iff it contains no minimal qualified set.
    bool is_forbidden(const Subset& f) const;

  private:
    int n_;
    std::vector<Subset> maximal_;
    std::vector<Subset> minimal_qualified_;
};

// Exhaustive for general structures (n <= 24); closed form for thresholds.
ForbiddenFamily forbidden_family(const AccessStructure& s);

// |F| x n selector: multiplying on the left restricts a share matrix to the
// rows indexed by F (in increasing order). F must be nonempty.
BitMatrix row_selector(const Subset& f, int n);

// Replaces participant i by multiplicities[i] clones: every qualified-matrix
// column is expanded into that many identical columns.
AccessStructure derive_structure(const AccessStructure& s, const std::vector<int>& multiplicities);

}  // namespace xvcs
