#include "xvcs/access.hpp"

#include <algorithm>
#include <cstdint>

namespace xvcs {

namespace {

bool is_subset(const Subset& a, const Subset& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void validate_set(const Subset& s, int n) {
    if (s.empty()) {
        throw std::invalid_argument("qualified set must be nonempty");
    }
    for (int p : s) {
        if (p < 0 || p >= n) {
            throw std::invalid_argument("participant index out of range");
        }
    }
}

std::vector<Subset> all_k_subsets(int k, int n) {
    std::vector<Subset> out;
    Subset cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

std::string subset_string(const Subset& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(s[i] + 1);
    }
    out += '}';
    return out;
}

BitMatrix indicator_row(const Subset& s, int n) {
    BitMatrix row(1, n);
    for (int p : s) {
        row.set(0, p, true);
    }
    return row;
}

AccessStructure::AccessStructure(int n, std::vector<Subset> minimal_qualified,
                                 std::optional<std::vector<Subset>> declared)
    : n_(n), minimal_(std::move(minimal_qualified)), declared_(std::move(declared)) {
    if (n_ <= 0) {
        throw std::invalid_argument("participant count must be positive");
    }
    if (minimal_.empty()) {
        throw std::invalid_argument("qualified family must be nonempty");
    }
    for (auto& q : minimal_) {
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        validate_set(q, n_);
    }
    std::sort(minimal_.begin(), minimal_.end());
    minimal_.erase(std::unique(minimal_.begin(), minimal_.end()), minimal_.end());
    const int k0 = static_cast<int>(minimal_.front().size());
    bool uniform_size = std::all_of(minimal_.begin(), minimal_.end(), [&](const Subset& q) {
        return static_cast<int>(q.size()) == k0;
    });
    // distinct equal-size sets cannot nest, so only mixed families need the
    // quadratic antichain check
    if (!uniform_size) {
        for (const auto& a : minimal_) {
            for (const auto& b : minimal_) {
                if (&a != &b && is_subset(a, b)) {
                    throw std::invalid_argument("qualified family is not an antichain: " +
                                                subset_string(a) + " is contained in " +
                                                subset_string(b));
                }
            }
        }
    }
    if (declared_) {
        for (auto& q : *declared_) {
            std::sort(q.begin(), q.end());
            validate_set(q, n_);
        }
    }

    if (uniform_size) {
        // count check suffices: distinct size-k sets, all of size k
        double count = 1.0;
        for (int i = 0; i < k0; ++i) {
            count = count * (n_ - i) / (i + 1);
        }
        if (static_cast<double>(minimal_.size()) == count) {
            threshold_k_ = k0;
        }
    }
}

QualifiedMatrix AccessStructure::qualified_matrix() const {
    QualifiedMatrix q;
    q.row_sets = minimal_;
    q.matrix = BitMatrix(static_cast<int>(minimal_.size()), n_);
    for (int r = 0; r < static_cast<int>(minimal_.size()); ++r) {
        for (int p : minimal_[static_cast<std::size_t>(r)]) {
            q.matrix.set(r, p, true);
        }
    }
    return q;
}

ParsedStructure parse_structure(std::string_view text) {
    std::vector<Subset> sets;
    int n = -1;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::string trimmed;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                trimmed += c;
            }
        }
        if (trimmed.empty()) {
            continue;
        }

        if (n < 0) {
            if (trimmed.rfind("n=", 0) != 0) {
                throw ParseError(line_no, "expected 'n=<count>' before any set");
            }
            try {
                n = std::stoi(trimmed.substr(2));
            } catch (const std::exception&) {
                throw ParseError(line_no, "invalid participant count '" + trimmed.substr(2) + "'");
            }
            if (n <= 0) {
                throw ParseError(line_no, "participant count must be positive");
            }
            continue;
        }

        if (trimmed.front() != '{' || trimmed.back() != '}') {
            throw ParseError(line_no, "expected a set like {1,2}");
        }
        Subset s;
        std::string body(trimmed.substr(1, trimmed.size() - 2));
        std::size_t start = 0;
        while (start < body.size()) {
            std::size_t comma = body.find(',', start);
            std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            start = comma == std::string::npos ? body.size() : comma + 1;
            int idx = 0;
            try {
                idx = std::stoi(tok);
            } catch (const std::exception&) {
                throw ParseError(line_no, "invalid participant index '" + tok + "'");
            }
            if (idx > n) {
                throw ParseError(line_no, "index " + std::to_string(idx) +
                                              " > n (n=" + std::to_string(n) + ")");
            }
            if (idx < 1) {
                throw ParseError(line_no, "index " + std::to_string(idx) + " < 1");
            }
            s.push_back(idx - 1);
        }
        if (s.empty()) {
            throw ParseError(line_no, "empty set");
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.push_back(std::move(s));
    }
    if (n < 0) {
        throw ParseError(line_no, "empty structure file");
    }
    if (sets.empty()) {
        throw ParseError(line_no, "no qualified sets given");
    }

    // reduce to the antichain of minimal sets
    std::vector<std::string> warnings;
    std::vector<Subset> minimal;
    for (const auto& a : sets) {
        bool dominated = false;
        for (const auto& b : sets) {
            if (a != b && is_subset(b, a)) {
                dominated = true;
                break;
            }
        }
        if (dominated) {
            warnings.push_back("dropped non-minimal set " + subset_string(a));
        } else {
            minimal.push_back(a);
        }
    }
    return {AccessStructure(n, std::move(minimal)), std::move(warnings)};
}

AccessStructure threshold_structure(int k, int n) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("threshold_structure: require 1 <= k <= n");
    }
    return AccessStructure(n, all_k_subsets(k, n));
}

bool ForbiddenFamily::is_forbidden(const Subset& f) const {
    for (const auto& q : minimal_qualified_) {
        if (is_subset(q, f)) {
            return false;
        }
    }
    return true;
}

ForbiddenFamily forbidden_family(const AccessStructure& s) {
    const int n = s.n();
    if (auto k = s.threshold_k()) {
        // forbidden = fewer than k participants, so maximal = all (k-1)-subsets
        std::vector<Subset> maximal = *k == 1 ? std::vector<Subset>{{}} : all_k_subsets(*k - 1, n);
        return ForbiddenFamily(n, std::move(maximal), s.minimal_qualified());
    }
    if (n > 24) {
        throw std::invalid_argument("forbidden_family: exhaustive search capped at n <= 24");
    }

    // contains_q[mask] = mask has some qualified subset; superset-sum DP
    const std::uint32_t total = std::uint32_t(1) << n;
    std::vector<std::uint8_t> contains_q(total, 0);
    for (const auto& q : s.minimal_qualified()) {
        std::uint32_t mask = 0;
        for (int p : q) {
            mask |= std::uint32_t(1) << p;
        }
        contains_q[mask] = 1;
    }
    for (int bit = 0; bit < n; ++bit) {
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            if (mask & (std::uint32_t(1) << bit)) {
                contains_q[mask] |= contains_q[mask ^ (std::uint32_t(1) << bit)];
            }
        }
    }

    std::vector<Subset> maximal;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (contains_q[mask]) {
            continue;  // not forbidden
        }
        bool is_max = true;
        for (int p = 0; p < n && is_max; ++p) {
            if (!(mask & (std::uint32_t(1) << p)) && !contains_q[mask | (std::uint32_t(1) << p)]) {
                is_max = false;
            }
        }
        if (is_max) {
            Subset f;
            for (int p = 0; p < n; ++p) {
                if (mask & (std::uint32_t(1) << p)) {
                    f.push_back(p);
                }
            }
            maximal.push_back(std::move(f));
        }
    }
    std::sort(maximal.begin(), maximal.end());
    return ForbiddenFamily(n, std::move(maximal), s.minimal_qualified());
}

BitMatrix row_selector(const Subset& f, int n) {
    if (f.empty()) {
        throw std::invalid_argument("row_selector: empty set");
    }
    Subset sorted = f;
    std::sort(sorted.begin(), sorted.end());
    BitMatrix t(static_cast<int>(sorted.size()), n);
    for (int j = 0; j < static_cast<int>(sorted.size()); ++j) {
        int p = sorted[static_cast<std::size_t>(j)];
        if (p < 0 || p >= n) {
            throw std::invalid_argument("row_selector: index out of range");
        }
        t.set(j, p, true);
    }
    return t;
}

AccessStructure derive_structure(const AccessStructure& s, const std::vector<int>& multiplicities) {
    if (static_cast<int>(multiplicities.size()) != s.n()) {
        throw std::invalid_argument("derive_structure: need one multiplicity per participant");
    }
    std::vector<int> offset(multiplicities.size() + 1, 0);
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        if (multiplicities[i] < 1) {
            throw std::invalid_argument("derive_structure: multiplicities must be >= 1");
        }
        offset[i + 1] = offset[i] + multiplicities[i];
    }
    std::vector<Subset> expanded;
    for (const auto& q : s.minimal_qualified()) {
        Subset e;
        for (int p : q) {
            for (int c = offset[static_cast<std::size_t>(p)];
                 c < offset[static_cast<std::size_t>(p) + 1]; ++c) {
                e.push_back(c);
            }
        }
        expanded.push_back(std::move(e));
    }
    return AccessStructure(offset.back(), std::move(expanded));
}

}  // namespace xvcs
