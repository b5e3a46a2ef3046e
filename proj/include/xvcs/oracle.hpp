#pragma once

#include <string>
#include <vector>

#include "xvcs/access.hpp"
#include "xvcs/bitmatrix.hpp"

namespace xvcs {

// Literal quantifier checks of the scheme definitions on explicit matrix
// collections, enumerating every member, every declared qualified set and
// every forbidden subset. Deliberately independent of the linear-algebra
// verdicts so the two can be cross-checked.

struct OracleCaps {
    std::size_t max_collection = 4096;
    int max_n = 8;
    int max_m = 4;
};

struct OracleVerdict {
    bool xvcs = false;        // pointwise contrast + restriction indistinguishability
    bool sxvcs = false;       // both colors reconstruct to fixed stacks
    bool semi_white = false;  // white stacks fixed
    bool semi_black = false;  // black stacks fixed
    bool pxvcs = false;       // averaged contrast + indistinguishability
    bool perfect_white = false;
    std::string detail;       // first violated condition
};

OracleVerdict oracle_classify(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                              const AccessStructure& s, const OracleCaps& caps = {});

inline bool is_xvcs(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                    const AccessStructure& s, const OracleCaps& caps = {}) {
    return oracle_classify(c0, c1, s, caps).xvcs;
}
inline bool is_sxvcs(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                     const AccessStructure& s, const OracleCaps& caps = {}) {
    return oracle_classify(c0, c1, s, caps).sxvcs;
}
inline bool is_semi(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                    const AccessStructure& s, const OracleCaps& caps = {}) {
    OracleVerdict v = oracle_classify(c0, c1, s, caps);
    return v.semi_white || v.semi_black;
}
inline bool is_pxvcs(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                     const AccessStructure& s, const OracleCaps& caps = {}) {
    return oracle_classify(c0, c1, s, caps).pxvcs;
}

}  // namespace xvcs
