#include "qlabel/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace qlabel::io {

using nlohmann::json;

ParseError::ParseError(const std::string& message, int line_, int column_)
    : Error("parse error at line " + std::to_string(line_) + ", column " +
            std::to_string(column_) + ": " + message),
      line(line_),
      column(column_) {}

SchemaError::SchemaError(const std::string& message, std::string field_name)
    : Error("schema error in field \"" + field_name + "\": " + message),
      field(std::move(field_name)) {}

namespace {

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, column);
    }
}

Complex read_entry(const json& entry, const std::string& field) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw SchemaError("each matrix entry must be a [re, im] pair of numbers", field);
    }
    return Complex{entry[0].get<double>(), entry[1].get<double>()};
}

Observable povm_from_json(const json& doc, double tol) {
    if (!doc.is_object()) throw SchemaError("document must be a JSON object", "$");
    if (!doc.contains("dimension")) throw SchemaError("missing", "dimension");
    if (!doc.contains("labels")) throw SchemaError("missing", "labels");
    if (!doc.contains("effects")) throw SchemaError("missing", "effects");

    const json& jdim = doc["dimension"];
    if (!jdim.is_number_integer() || jdim.get<long long>() < 1) {
        throw SchemaError("must be a positive integer", "dimension");
    }
    const int d = jdim.get<int>();

    const json& jlabels = doc["labels"];
    if (!jlabels.is_array()) throw SchemaError("must be an array of strings", "labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < jlabels.size(); ++i) {
        if (!jlabels[i].is_string()) {
            throw SchemaError("must be a string", "labels[" + std::to_string(i + 1) + "]");
        }
        labels.push_back(jlabels[i].get<std::string>());
    }

    const json& jeffects = doc["effects"];
    if (!jeffects.is_array()) throw SchemaError("must be an array of effect matrices", "effects");
    std::vector<Matrix> effects;
    for (std::size_t k = 0; k < jeffects.size(); ++k) {
        const std::string field = "effects[" + std::to_string(k + 1) + "]";
        const json& je = jeffects[k];
        if (!je.is_array() || je.size() != static_cast<std::size_t>(d) * d) {
            throw SchemaError("must be a flat row-major list of " + std::to_string(d * d) +
                                  " [re, im] pairs",
                              field);
        }
        Matrix m(d, d);
        for (int e = 0; e < d * d; ++e) {
            m(e / d, e % d) = read_entry(je[e], field);
        }
        effects.push_back(std::move(m));
    }

    return Observable(std::move(labels), std::move(effects), tol);
}

}  // namespace

Observable parse_povm_text(const std::string& json_text, double tol) {
    return povm_from_json(parse_json(json_text), tol);
}

Observable parse_povm(const std::string& path, double tol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_povm_text(buffer.str(), tol);
}

std::string serialize_povm(const Observable& obs) {
    json doc;
    doc["dimension"] = obs.dim();
    doc["labels"] = obs.labels();
    json effects = json::array();
    for (int k = 0; k < obs.outcomes(); ++k) {
        json entries = json::array();
        const Matrix& m = obs.effect_matrix(k);
        for (int r = 0; r < obs.dim(); ++r) {
            for (int c = 0; c < obs.dim(); ++c) {
                entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
            }
        }
        effects.push_back(std::move(entries));
    }
    doc["effects"] = std::move(effects);
    return doc.dump(2) + "\n";
}

}  // namespace qlabel::io
