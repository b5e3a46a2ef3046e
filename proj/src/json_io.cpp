#include "xvcs/json_io.hpp"

namespace xvcs {

namespace {

nlohmann::json sets_to_json(const std::vector<Subset>& sets) {
    nlohmann::json out = nlohmann::json::array();
    for (const Subset& s : sets) {
        nlohmann::json one = nlohmann::json::array();
        for (int p : s) {
            one.push_back(p + 1);
        }
        out.push_back(std::move(one));
    }
    return out;
}

BitMatrix matrix_from_flat(const std::string& flat, int rows, int cols, const char* what) {
    if (static_cast<int>(flat.size()) != rows * cols) {
        throw std::runtime_error(std::string(what) + ": expected " + std::to_string(rows * cols) +
                                 " bits, got " + std::to_string(flat.size()));
    }
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            char ch = flat[static_cast<std::size_t>(r * cols + c)];
            if (ch != '0' && ch != '1') {
                throw std::runtime_error(std::string(what) + ": invalid bit character");
            }
            m.set(r, c, ch == '1');
        }
    }
    return m;
}

}  // namespace

nlohmann::ordered_json scheme_to_json(const LinearScheme& s, const SchemeClass& cls) {
    nlohmann::ordered_json j;
    j["n"] = s.n();
    j["m"] = s.m;
    j["k"] = s.k;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < s.t(); ++r) {
        rows.push_back(s.qualified.matrix.row_string(r));
    }
    j["qualified_rows"] = std::move(rows);
    nlohmann::json b0 = nlohmann::json::array();
    for (const BitMatrix& b : s.b0) {
        b0.push_back(b.flat_string());
    }
    j["b0"] = std::move(b0);
    nlohmann::json b1 = nlohmann::json::array();
    for (const BitMatrix& b : s.b1) {
        b1.push_back(b.flat_string());
    }
    j["b1"] = std::move(b1);
    j["class"] = cls.str();
    return j;
}

LoadedScheme scheme_from_json(const nlohmann::json& j) {
    for (const char* field : {"n", "m", "k", "qualified_rows", "b0", "b1", "class"}) {
        if (!j.contains(field)) {
            throw std::runtime_error(std::string("scheme JSON: missing field '") + field + "'");
        }
    }
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const int k = j.at("k").get<int>();
    if (n < 1 || m < 1 || k < 1) {
        throw std::runtime_error("scheme JSON: n, m, k must be positive");
    }
    QualifiedMatrix q;
    std::vector<std::string> row_strings = j.at("qualified_rows").get<std::vector<std::string>>();
    if (row_strings.empty()) {
        throw std::runtime_error("scheme JSON: qualified_rows is empty");
    }
    for (const std::string& row : row_strings) {
        if (static_cast<int>(row.size()) != n) {
            throw std::runtime_error("scheme JSON: qualified row width != n");
        }
    }
    q.matrix = BitMatrix::from_rows(row_strings);
    for (int r = 0; r < q.matrix.rows(); ++r) {
        Subset set;
        for (int c = 0; c < n; ++c) {
            if (q.matrix.get(r, c)) {
                set.push_back(c);
            }
        }
        if (set.empty()) {
            throw std::runtime_error("scheme JSON: empty qualified row");
        }
        q.row_sets.push_back(std::move(set));
    }
    const int t = q.matrix.rows();
    auto targets = [&](const char* field) {
        std::vector<BitMatrix> out;
        for (const auto& flat : j.at(field).get<std::vector<std::string>>()) {
            out.push_back(matrix_from_flat(flat, t, m, field));
        }
        if (static_cast<int>(out.size()) != k) {
            throw std::runtime_error(std::string("scheme JSON: ") + field + " list size != k");
        }
        return out;
    };
    LoadedScheme loaded{make_scheme(q, targets("b0"), targets("b1")),
                        scheme_class_from_string(j.at("class").get<std::string>())};
    return loaded;
}

nlohmann::ordered_json analyze_report(const AccessStructure& s,
                                      const std::vector<std::string>& warnings,
                                      const ExistenceVerdict* expansion1,
                                      const std::string& expansion1_refusal,
                                      const ExistenceVerdict* sxvcs,
                                      const std::string& sxvcs_refusal) {
    nlohmann::ordered_json j;
    j["n"] = s.n();
    j["minimal_qualified"] = sets_to_json(s.minimal_qualified());
    j["maximal_forbidden"] = sets_to_json(forbidden_family(s).maximal_forbidden());
    j["warnings"] = warnings;

    nlohmann::ordered_json e1;
    if (expansion1 != nullptr) {
        e1["exists"] = expansion1->exists;
        if (expansion1->witness_rows) {
            nlohmann::json rows = nlohmann::json::array();
            for (int r : *expansion1->witness_rows) {
                rows.push_back(r + 1);
            }
            e1["witness_rows"] = std::move(rows);
        }
        e1["reason"] = expansion1->reason;
    } else {
        e1["refused"] = expansion1_refusal;
    }
    j["expansion1"] = std::move(e1);

    nlohmann::ordered_json sx;
    if (sxvcs != nullptr) {
        sx["exists"] = sxvcs->exists;
        if (sxvcs->minimal_m) {
            sx["minimal_m"] = *sxvcs->minimal_m;
            sx["minimal_m_is_exact"] = sxvcs->minimal_m_is_exact;
        }
        if (sxvcs->certificate) {
            nlohmann::json rows = nlohmann::json::array();
            for (int r = 0; r < sxvcs->certificate->rows(); ++r) {
                rows.push_back(sxvcs->certificate->row_string(r));
            }
            sx["certificate_rows"] = std::move(rows);
        }
        if (sxvcs->forced_zero_row) {
            sx["forced_zero_row"] = *sxvcs->forced_zero_row + 1;
        }
        sx["reason"] = sxvcs->reason;
    } else {
        sx["refused"] = sxvcs_refusal;
    }
    j["sxvcs"] = std::move(sx);
    return j;
}

nlohmann::ordered_json contrast_to_json(const ContrastReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.pass;
    if (r.pass) {
        j["average"] = r.average.str();
        j["min"] = r.min_alpha.str();
        nlohmann::ordered_json per_q = nlohmann::ordered_json::array();
        for (const PerQContrast& pq : r.per_q) {
            nlohmann::ordered_json one;
            one["q"] = subset_string(pq.q);
            one["alpha"] = pq.alpha.str();
            if (pq.is_static) {
                one["e0"] = pq.e0.front().row_string(0);
                one["e1"] = pq.e1.front().row_string(0);
            }
            per_q.push_back(std::move(one));
        }
        j["per_q"] = std::move(per_q);
    } else if (r.failure) {
        j["failure"] = r.failure->detail;
    }
    return j;
}

}  // namespace xvcs
