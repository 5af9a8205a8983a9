// nilpair: canonical forms for commuting nilpotent pairs (n <= 4) under
// simultaneous similarity, over Q, GF(p) and GF(p^2).
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nilpair/json_io.hpp"

using nlohmann::json;
using namespace nilpair;

namespace {

// 0 success, 1 validation, 2 non-split, 3 internal invariant breach
constexpr int kExitValidation = 1;
constexpr int kExitNotSplit = 2;
constexpr int kExitInternal = 3;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("input is not valid JSON");
    return j;
}

PairDocument load_document(const std::string& path, const std::string& field_override) {
    json j = parse_json(read_input(path));
    if (!field_override.empty() && j.is_object() && !j.contains("field")) {
        j["field"] = field_to_json(parse_field_name(field_override));
    }
    return pair_document_from_json(j);
}

void emit(const json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

int run_canon(const std::string& path, const std::string& field, bool allow_ext, bool pretty) {
    MatrixPair pair = to_matrix_pair(load_document(path, field));
    CanonOptions opts;
    opts.allow_extension = allow_ext;
    CanonResult r = canonicalize(pair, opts);
    json out;
    out["field"] = field_to_json(r.field);
    out["extended"] = r.extended;
    out["canon_form"] = canon_form_to_json(r.form);
    out["witness"] = witness_to_json(r.witness);
    out["indecomposable_blocks"] = r.form.blocks.size();
    emit(out, pretty);
    return 0;
}

int run_similar(const std::string& path1, const std::string& path2, const std::string& field,
                bool allow_ext, bool pretty) {
    MatrixPair p1 = to_matrix_pair(load_document(path1, field));
    MatrixPair p2 = to_matrix_pair(load_document(path2, field));
    CanonOptions opts;
    opts.allow_extension = allow_ext;
    auto wit = similar(p1, p2, opts);
    json out;
    out["similar"] = wit.has_value();
    if (wit) out["witness"] = witness_to_json(*wit);
    emit(out, pretty);
    return 0;
}

int run_check(const std::string& path, const std::string& field, bool pretty) {
    PairDocument doc = load_document(path, field);
    MatrixPair pair = to_matrix_pair(doc);
    json out;
    out["valid"] = true;
    out["n"] = pair.n();
    out["field"] = field_to_json(pair.spec());
    emit(out, pretty);
    return 0;
}

int run_commutant(const std::string& path, const std::string& field, bool pretty) {
    MatrixPair pair = to_matrix_pair(load_document(path, field));
    json out;
    out["a_commutant"] = linspace_to_json(commutant(pair.a));
    out["pair_commutant"] = linspace_to_json(pair_commutant(pair));
    emit(out, pretty);
    return 0;
}

int run_indecomposable(const std::string& path, const std::string& field, bool pretty) {
    MatrixPair pair = to_matrix_pair(load_document(path, field));
    emit(certificate_to_json(is_indecomposable(pair)), pretty);
    return 0;
}

int run_enumerate(int p, int n, bool do_crosscheck, bool deep, bool pretty) {
    if (p == 3 && n == 4 && !deep)
        throw ValidationError("GF(3) at n = 4 is expensive; pass --deep to run it");
    json out;
    if (do_crosscheck) {
        oracle::CrosscheckReport report = oracle::crosscheck(p, n);
        out = report_to_json(report);
        emit(out, pretty);
        return report.clean() ? 0 : kExitInternal;
    }
    oracle::OrbitTable table = oracle::orbit_partition(p, n);
    out["p"] = p;
    out["n"] = n;
    out["total_pairs"] = table.total_pairs;
    out["orbit_count"] = table.orbits.size();
    emit(out, pretty);
    return 0;
}

int run_fields(bool pretty) {
    json out = json::array();
    for (const auto& [p, poly] : minimal_poly_table()) {
        json row;
        row["p"] = p;
        row["minimal_poly"] = poly;
        out.push_back(row);
    }
    emit(out, pretty);
    return 0;
}

int run_selftest(bool pretty) {
    json report = json::array();
    bool ok = true;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        json row;
        row["check"] = name;
        row["pass"] = pass;
        if (!detail.empty()) row["detail"] = detail;
        report.push_back(row);
        ok = ok && pass;
    };

    // commutant dimensions of the five nilpotent 4x4 Jordan types
    {
        const std::vector<std::pair<std::vector<int>, int>> expected = {
            {{4}, 4}, {{3, 1}, 6}, {{2, 2}, 8}, {{2, 1, 1}, 10}, {{1, 1, 1, 1}, 16}};
        bool pass = true;
        std::string detail;
        for (const auto& [part, dim] : expected) {
            int got = commutant(Mat::jordan(part, FieldSpec::rationals())).dim();
            if (got != dim) {
                pass = false;
                detail += JordanType{part}.str() + " -> " + std::to_string(got) + " ";
            }
        }
        record("commutant dimensions (4, 6, 8, 10, 16)", pass, detail);
    }

    // exhaustive GF(2) crosscheck, n = 1..4
    for (int n = 1; n <= 4; ++n) {
        oracle::CrosscheckReport r = oracle::crosscheck(2, n);
        std::string detail = "pairs=" + std::to_string(r.total_pairs) +
                             " orbits=" + std::to_string(r.orbit_count) +
                             " extension=" + std::to_string(r.orbits_extension);
        record("GF(2) crosscheck n=" + std::to_string(n), r.clean(), detail);
    }

    // witness exactness on a sample of random conjugations
    {
        std::mt19937_64 rng(12345);
        FieldSpec q = FieldSpec::rationals();
        bool pass = true;
        for (int trial = 0; trial < 200 && pass; ++trial) {
            std::vector<std::string> labels = family_labels_size4();
            const std::string& label = labels[rng() % labels.size()];
            std::vector<Scalar> params;
            for (int k = 0; k < family_param_count(label); ++k)
                params.push_back(Scalar::of_int(q, static_cast<long>(rng() % 5) - 2));
            CanonForm form = CanonForm::of({IndecBlock{4, label, params}});
            MatrixPair pair = build_canonical(form, q);
            Mat x(4, q);
            do {
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        x.at(i, j) = Scalar::of_int(q, static_cast<long>(rng() % 5) - 2);
            } while (!is_invertible(x));
            MatrixPair moved = MatrixPair::validated(conjugate(x, pair.a), conjugate(x, pair.b));
            CanonResult r = canonicalize(moved);
            pass = r.form == form;
        }
        record("witness exactness sample", pass, "");
    }

    json out;
    out["pass"] = ok;
    out["checks"] = report;
    emit(out, pretty);
    return ok ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical forms for commuting nilpotent matrix pairs (n <= 4)"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string path = "-", path2, field_override;
    bool allow_ext = false;
    int p = 2, n = 4;
    bool do_crosscheck = false, deep = false, show = false;

    auto* canon = app.add_subcommand("canon", "canonicalize a pair document");
    canon->add_option("input", path, "pair document (file or - for stdin)");
    canon->add_option("--field", field_override, "field when the document omits it");
    canon->add_flag("--allow-extension", allow_ext, "lift GF(p) to GF(p^2) when needed");

    auto* simi = app.add_subcommand("similar", "test simultaneous similarity of two documents");
    simi->add_option("first", path, "first pair document")->required();
    simi->add_option("second", path2, "second pair document")->required();
    simi->add_option("--field", field_override, "field when the documents omit it");
    simi->add_flag("--allow-extension", allow_ext, "lift GF(p) to GF(p^2) when needed");

    auto* check = app.add_subcommand("check", "validate a pair document");
    check->add_option("input", path, "pair document (file or - for stdin)");
    check->add_option("--field", field_override, "field when the document omits it");

    auto* comm = app.add_subcommand("commutant", "commutant bases of a pair document");
    comm->add_option("input", path, "pair document (file or - for stdin)");
    comm->add_option("--field", field_override, "field when the document omits it");

    auto* indec = app.add_subcommand("indecomposable", "certify (in)decomposability");
    indec->add_option("input", path, "pair document (file or - for stdin)");
    indec->add_option("--field", field_override, "field when the document omits it");

    auto* enumc = app.add_subcommand("enumerate", "exhaustive finite-field enumeration");
    enumc->add_option("--p", p, "prime (2 or 3)")->required();
    enumc->add_option("--n", n, "dimension (1..4)")->required();
    enumc->add_flag("--crosscheck", do_crosscheck, "run the classification crosscheck");
    enumc->add_flag("--deep", deep, "allow the expensive GF(3) n=4 run");

    auto* fields = app.add_subcommand("fields", "supported fields");
    fields->add_flag("--show", show, "print the GF(p^2) minimal polynomial table");

    app.add_subcommand("selftest", "run the built-in release checks");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (canon->parsed()) return run_canon(path, field_override, allow_ext, pretty);
        if (simi->parsed()) return run_similar(path, path2, field_override, allow_ext, pretty);
        if (check->parsed()) return run_check(path, field_override, pretty);
        if (comm->parsed()) return run_commutant(path, field_override, pretty);
        if (indec->parsed()) return run_indecomposable(path, field_override, pretty);
        if (enumc->parsed()) return run_enumerate(p, n, do_crosscheck, deep, pretty);
        if (fields->parsed()) return run_fields(pretty);
        return run_selftest(pretty);
    } catch (const NotSplit& e) {
        json err;
        err["error"] = "not_split";
        err["polynomial"] = e.polynomial;
        emit(err, pretty);
        return kExitNotSplit;
    } catch (const InternalError& e) {
        json err;
        err["error"] = "internal";
        err["detail"] = e.what();
        emit(err, pretty);
        return kExitInternal;
    } catch (const Error& e) {
        json err;
        err["error"] = "validation";
        err["detail"] = e.what();
        emit(err, pretty);
        return kExitValidation;
    }
}
