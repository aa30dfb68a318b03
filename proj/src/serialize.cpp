#include "opstar/serialize.hpp"

#include <cmath>
#include <fstream>

namespace opstar {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(std::string(where) +
                                    ": entries must be [re, im] number pairs");
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument(std::string(where) + ": non-finite entry");
    return Complex(re, im);
}

std::vector<int> dims_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        throw std::invalid_argument(std::string("missing or empty \"") + key +
                                    "\" array");
    std::vector<int> dims;
    for (const auto& d : j[key]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw std::invalid_argument(std::string("\"") + key +
                                        "\" must contain positive integers");
        dims.push_back(d.get<int>());
    }
    return dims;
}

}  // namespace

Json element_to_json(const Element& a) {
    Json j;
    j["dims"] = a.shape().dims;
    Json blocks = Json::array();
    for (int b = 0; b < a.blocks(); ++b) {
        const Matrix& m = a.block(b);
        Json rows = Json::array();
        for (int i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

Element element_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("Element: expected a JSON object");
    const AlgebraShape shape(dims_from_json(j, "dims"));
    if (!j.contains("blocks") || !j["blocks"].is_array() ||
        static_cast<int>(j["blocks"].size()) != shape.blocks())
        throw std::invalid_argument("Element: \"blocks\" must list one block per dim");
    std::vector<Matrix> blocks;
    for (int b = 0; b < shape.blocks(); ++b) {
        const int n = shape.dims[b];
        const Json& rows = j["blocks"][b];
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw std::invalid_argument("Element: block " + std::to_string(b) +
                                        " must have " + std::to_string(n) + " rows");
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
                throw std::invalid_argument("Element: block " + std::to_string(b) +
                                            " row " + std::to_string(i) +
                                            " must have " + std::to_string(n) +
                                            " entries");
            for (int k = 0; k < n; ++k)
                m(i, k) = complex_from_json(rows[i][k], "Element");
        }
        blocks.push_back(std::move(m));
    }
    return Element(shape, std::move(blocks));
}

Json superop_to_json(const SuperOp& t) {
    Json j;
    j["dom_dims"] = t.dom().dims;
    j["cod_dims"] = t.cod().dims;
    Json rows = Json::array();
    for (int i = 0; i < t.mat().rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < t.mat().cols(); ++k)
            row.push_back(complex_to_json(t.mat()(i, k)));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

SuperOp superop_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("SuperOp: expected a JSON object");
    const AlgebraShape dom(dims_from_json(j, "dom_dims"));
    const AlgebraShape cod(dims_from_json(j, "cod_dims"));
    if (!j.contains("matrix") || !j["matrix"].is_array() ||
        static_cast<int>(j["matrix"].size()) != cod.total_dim())
        throw std::invalid_argument("SuperOp: \"matrix\" must have " +
                                    std::to_string(cod.total_dim()) + " rows");
    Matrix m(cod.total_dim(), dom.total_dim());
    for (int i = 0; i < m.rows(); ++i) {
        const Json& row = j["matrix"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != dom.total_dim())
            throw std::invalid_argument("SuperOp: row " + std::to_string(i) +
                                        " must have " + std::to_string(dom.total_dim()) +
                                        " entries");
        for (int k = 0; k < m.cols(); ++k)
            m(i, k) = complex_from_json(row[k], "SuperOp");
    }
    return SuperOp(dom, cod, std::move(m));
}

Json decomposition_to_json(const Decomposition& dec) {
    Json j;
    j["h"] = element_to_json(dec.h);
    j["r"] = element_to_json(dec.r);
    j["S"] = superop_to_json(dec.s);
    j["residuals"] = dec.residuals;
    j["verdict"] = dec.verdict;
    return j;
}

Json scan_to_json(const SemigroupScan& sc, const ResidualMap& check_residuals) {
    Json j;
    j["times"] = sc.times;
    Json records = Json::array();
    for (const auto& rec : sc.records) {
        Json r;
        r["t"] = rec.t;
        r["h"] = element_to_json(rec.h);
        r["r"] = element_to_json(rec.r);
        r["S"] = superop_to_json(rec.s);
        r["verdict"] = rec.verdict;
        records.push_back(std::move(r));
    }
    j["records"] = std::move(records);
    j["residuals"] = check_residuals;
    return j;
}

Json property_report_to_json(const PropertyReport& rep) {
    Json j;
    j["property"] = rep.property;
    j["verdict"] = rep.verdict;
    j["worst_residual"] = rep.worst_residual;
    j["exhaustive"] = rep.exhaustive;
    j["witness"] = rep.witness;
    j["residuals"] = rep.residuals;
    return j;
}

Json pedersen_to_json(const PedersenReport& rep) {
    Json j;
    j["c1"] = rep.c1;
    j["c2"] = rep.c2;
    j["c3"] = rep.c3;
    j["c4"] = rep.c4;
    j["r1"] = rep.r1;
    j["r2"] = rep.r2;
    j["r3"] = rep.r3;
    j["r4"] = rep.r4;
    j["defect_norm"] = rep.defect_norm;
    j["agreement"] = rep.agreement;
    j["isometry_generator"] = rep.isometry_generator;
    j["verdict"] = rep.verdict;
    j["note"] = rep.note;
    return j;
}

Json box_record_to_json(const BoxExampleRecord& rec) {
    Json j;
    j["t"] = rec.t;
    j["s"] = rec.s;
    j["e"] = element_to_json(rec.e);
    j["flow_vs_peirce"] = rec.flow_vs_peirce;
    j["weight_vs_formula"] = rec.weight_vs_formula;
    j["defect_vs_formula"] = rec.defect_vs_formula;
    j["weight_equals_isometry"] = rec.weight_equals_isometry;
    j["defect_norm"] = rec.defect_norm;
    j["shift_weight_vs_formula"] = rec.shift_weight_vs_formula;
    j["shift_defect_norm"] = rec.shift_defect_norm;
    j["verdict"] = rec.verdict;
    j["note"] = rec.note;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace opstar
