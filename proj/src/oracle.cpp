#include "xvcs/oracle.hpp"

#include <cstdint>
#include <map>

#include "xvcs/rational.hpp"

namespace xvcs {

namespace {

BitMatrix stack_rows(const BitMatrix& m, const Subset& q) {
    BitMatrix out(1, m.cols());
    for (int p : q) {
        out.row_xor_from(0, m, p);
    }
    return out;
}

int weight(const BitMatrix& row) { return row.row_weight(0); }

}  // namespace

OracleVerdict oracle_classify(const std::vector<BitMatrix>& c0, const std::vector<BitMatrix>& c1,
                              const AccessStructure& s, const OracleCaps& caps) {
    OracleVerdict v;
    if (c0.empty() || c1.empty()) {
        throw std::invalid_argument("oracle: empty collection");
    }
    if (c0.size() > caps.max_collection || c1.size() > caps.max_collection) {
        throw std::runtime_error("oracle: collection cap exceeded");
    }
    const int n = c0.front().rows();
    const int m = c0.front().cols();
    if (n != s.n()) {
        throw std::invalid_argument("oracle: participant count mismatch");
    }
    if (n > caps.max_n || m > caps.max_m) {
        throw std::runtime_error("oracle: dimension cap exceeded");
    }
    for (const auto& c : {c0, c1}) {
        for (const BitMatrix& x : c) {
            if (x.rows() != n || x.cols() != m) {
                throw std::invalid_argument("oracle: ragged collection");
            }
        }
    }

    // contrast: pointwise and averaged, plus per-color stack constancy
    bool contrast_pointwise = true;
    bool contrast_average = true;
    bool static_white = true;
    bool static_black = true;
    bool pw = true;
    for (const Subset& q : s.declared_qualified()) {
        int max_w = -1, min_b = m + 1;
        std::int64_t sum_w = 0, sum_b = 0;
        BitMatrix first_w, first_b;
        for (std::size_t i = 0; i < c0.size(); ++i) {
            BitMatrix e = stack_rows(c0[i], q);
            int w = weight(e);
            max_w = std::max(max_w, w);
            sum_w += w;
            if (!e.is_zero()) {
                pw = false;
            }
            if (i == 0) {
                first_w = e;
            } else if (e != first_w) {
                static_white = false;
            }
        }
        for (std::size_t j = 0; j < c1.size(); ++j) {
            BitMatrix e = stack_rows(c1[j], q);
            int w = weight(e);
            min_b = std::min(min_b, w);
            sum_b += w;
            if (j == 0) {
                first_b = e;
            } else if (e != first_b) {
                static_black = false;
            }
        }
        if (max_w >= min_b) {
            contrast_pointwise = false;
            if (v.detail.empty()) {
                v.detail = "contrast fails at " + subset_string(q);
            }
        }
        // averaged inequality with exact cross-multiplied comparison
        if (sum_w * static_cast<std::int64_t>(c1.size()) >=
            sum_b * static_cast<std::int64_t>(c0.size())) {
            contrast_average = false;
            if (v.detail.empty()) {
                v.detail = "averaged contrast fails at " + subset_string(q);
            }
        }
    }

    // security: every forbidden subset, frequency distributions must agree
    bool secure = true;
    ForbiddenFamily fam = forbidden_family(s);
    const std::uint32_t total = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < total && secure; ++mask) {
        Subset f;
        for (int p = 0; p < n; ++p) {
            if (mask & (std::uint32_t(1) << p)) {
                f.push_back(p);
            }
        }
        if (f.empty() || !fam.is_forbidden(f)) {
            continue;
        }
        std::map<BitMatrix, std::int64_t> freq;
        for (const BitMatrix& x : c0) {
            freq[x.select_rows(f)] += static_cast<std::int64_t>(c1.size());
        }
        for (const BitMatrix& x : c1) {
            freq[x.select_rows(f)] -= static_cast<std::int64_t>(c0.size());
        }
        for (const auto& [key, count] : freq) {
            if (count != 0) {
                secure = false;
                if (v.detail.empty()) {
                    v.detail = "security fails at F=" + subset_string(f);
                }
                break;
            }
        }
    }

    v.xvcs = contrast_pointwise && secure;
    v.sxvcs = v.xvcs && static_white && static_black;
    v.semi_white = v.xvcs && static_white;
    v.semi_black = v.xvcs && static_black;
    v.pxvcs = contrast_average && secure;
    v.perfect_white = pw;
    if (v.xvcs) {
        v.detail.clear();
    }
    return v;
}

}  // namespace xvcs
