#include "nilpair/json_io.hpp"

namespace nilpair {

using nlohmann::json;

json field_to_json(const FieldSpec& spec) {
    json j;
    switch (spec.kind) {
        case FieldKind::Rationals: j["kind"] = "rationals"; break;
        case FieldKind::Prime:
            j["kind"] = "prime";
            j["p"] = spec.p;
            break;
        case FieldKind::Quadratic:
            j["kind"] = "quadratic";
            j["p"] = spec.p;
            j["minimal_poly"] = spec.minimal_poly();
            break;
    }
    return j;
}

FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("field descriptor needs a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime" || kind == "quadratic") {
        if (!j.contains("p") || !j["p"].is_number_integer())
            throw ValidationError("field descriptor needs an integer \"p\"");
        int p = j["p"].get<int>();
        return kind == "prime" ? FieldSpec::prime(p) : FieldSpec::quadratic(p);
    }
    throw ValidationError("unknown field kind \"" + kind + "\"");
}

FieldSpec parse_field_name(const std::string& name) {
    if (name == "Q" || name == "q" || name == "rationals") return FieldSpec::rationals();
    auto parse_gf = [&](const std::string& s) -> FieldSpec {
        // GF(p) or GF(p^2)
        auto open = s.find('('), close = s.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close <= open)
            throw ValidationError("bad field name \"" + s + "\"");
        std::string inner = s.substr(open + 1, close - open - 1);
        auto caret = inner.find('^');
        if (caret == std::string::npos) return FieldSpec::prime(std::stoi(inner));
        int p = std::stoi(inner.substr(0, caret));
        int e = std::stoi(inner.substr(caret + 1));
        if (e != 2) throw ValidationError("only quadratic extensions are supported");
        return FieldSpec::quadratic(p);
    };
    if (name.rfind("GF", 0) == 0 || name.rfind("gf", 0) == 0) return parse_gf(name);
    throw ValidationError("bad field name \"" + name + "\" (use Q, GF(p), GF(p^2))");
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const json& j, const FieldSpec& spec) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
    int n = static_cast<int>(j.size());
    if (n > kMaxDim) throw ValidationError("dimension out of range (need 1 <= n <= 4)");
    Mat m(n, spec);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
            throw ValidationError("non-square: row " + std::to_string(i + 1) +
                                  " has the wrong length");
        for (int c = 0; c < n; ++c) {
            if (!j[i][c].is_string())
                throw ValidationError("matrix entries must be scalar strings");
            m.at(i, c) = Scalar::parse(spec, j[i][c].get<std::string>());
        }
    }
    return m;
}

PairDocument pair_document_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("pair document must be a JSON object");
    if (!j.contains("A") || !j.contains("B"))
        throw ValidationError("pair document needs \"A\" and \"B\" matrices");
    FieldSpec spec =
        j.contains("field") ? field_from_json(j["field"]) : FieldSpec::rationals();
    PairDocument doc{spec, mat_from_json(j["A"], spec), mat_from_json(j["B"], spec)};
    if (doc.a.n() != doc.b.n())
        throw ValidationError("non-square: A and B have different dimensions");
    return doc;
}

json pair_document_to_json(const PairDocument& doc) {
    json j;
    j["field"] = field_to_json(doc.field);
    j["A"] = mat_to_json(doc.a);
    j["B"] = mat_to_json(doc.b);
    return j;
}

MatrixPair to_matrix_pair(const PairDocument& doc) { return MatrixPair::validated(doc.a, doc.b); }

json canon_form_to_json(const CanonForm& form) {
    json blocks = json::array();
    for (const auto& b : form.blocks) {
        json jb;
        jb["size"] = b.size;
        jb["label"] = b.label;
        json params = json::array();
        for (const Scalar& s : b.params) params.push_back(s.str());
        jb["params"] = params;
        blocks.push_back(jb);
    }
    json j;
    j["blocks"] = blocks;
    return j;
}

json witness_to_json(const Witness& w) { return mat_to_json(w.x); }

json certificate_to_json(const IndecCertificate& cert) {
    json j;
    j["verdict"] = cert.decomposable() ? "decomposable" : "indecomposable";
    j["method"] = cert.method_name();
    if (cert.decomposable()) {
        j["split_basis"] = mat_to_json(cert.split_basis);
        j["sizes"] = cert.sizes;
    }
    return j;
}

json linspace_to_json(const LinSpace& space) {
    json j;
    j["dimension"] = space.dim();
    json basis = json::array();
    for (const Mat& m : space.basis) basis.push_back(mat_to_json(m));
    j["basis"] = basis;
    return j;
}

json report_to_json(const oracle::CrosscheckReport& report) {
    json j;
    j["field"] = report.field;
    j["total_pairs"] = report.total_pairs;
    j["orbit_count"] = report.orbit_count;
    j["orbits_matched"] = report.orbits_matched;
    j["orbits_extension"] = report.orbits_extension;
    j["mismatches"] = report.mismatches;
    j["orbit_size_checksum"] = report.orbit_size_checksum;
    return j;
}

}  // namespace nilpair
