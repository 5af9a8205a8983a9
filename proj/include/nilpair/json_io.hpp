// JSON document formats for the CLI surface.
#pragma once

#include "nilpair/canon.hpp"
#include "nilpair/decompose.hpp"
#include "nilpair/oracle.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace nilpair {

nlohmann::json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const nlohmann::json& j);
// "Q" | "GF(p)" | "GF(p^2)"
FieldSpec parse_field_name(const std::string& name);

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j, const FieldSpec& spec);

// {"field": {...}, "A": [[...]], "B": [[...]]}
struct PairDocument {
    FieldSpec field;
    Mat a, b;
};

PairDocument pair_document_from_json(const nlohmann::json& j);
nlohmann::json pair_document_to_json(const PairDocument& doc);
MatrixPair to_matrix_pair(const PairDocument& doc);  // semantic validation

nlohmann::json canon_form_to_json(const CanonForm& form);
nlohmann::json witness_to_json(const Witness& w);
nlohmann::json certificate_to_json(const IndecCertificate& cert);
nlohmann::json linspace_to_json(const LinSpace& space);
nlohmann::json report_to_json(const oracle::CrosscheckReport& report);

}  // namespace nilpair
