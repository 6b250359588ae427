#include "ffnn/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "ffnn/error.hpp"
#include "json.hpp"

namespace ffnn::io {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

json activation_to_json(ActivationKind kind) {
    switch (kind.kind()) {
        case ActivationKind::Kind::Identity:
            return "identity";
        case ActivationKind::Kind::Sigmoid:
            return "sigmoid";
        case ActivationKind::Kind::Threshold:
            return json{{"threshold", kind.theta()}};
    }
    return nullptr;
}

ActivationKind activation_from_json(const json& j) {
    if (j.is_string()) {
        const auto& name = j.get_ref<const std::string&>();
        if (name == "identity") return ActivationKind::identity();
        if (name == "sigmoid") return ActivationKind::sigmoid();
        throw ParseError("unknown activation \"" + name + "\"");
    }
    if (j.is_object() && j.size() == 1 && j.contains("threshold")) {
        const json& theta = j.at("threshold");
        if (theta.is_null()) throw ValidationError("threshold must be finite");
        if (!theta.is_number()) throw ParseError("threshold must be a number");
        return ActivationKind::threshold(theta.get<double>());
    }
    throw ParseError("activation must be \"identity\", \"sigmoid\" or {\"threshold\": number}");
}

const json& require(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

Layer layer_from_json(const json& j, std::size_t index) {
    const std::string where = "layer " + std::to_string(index) + ": ";
    const json& has_bias = require(j, "has_bias");
    if (!has_bias.is_boolean()) throw ParseError(where + "has_bias must be a boolean");
    const json& rows = require(j, "weights");
    if (!rows.is_array() || rows.empty()) throw ValidationError(where + "weights must be a non-empty 2D array");

    std::size_t cols = 0;
    std::vector<double> data;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const json& row = rows[r];
        if (!row.is_array()) throw ParseError(where + "weights must be a 2D array");
        if (r == 0) cols = row.size();
        if (row.size() != cols) throw ValidationError(where + "weight rows have different lengths");
        for (const json& v : row) {
            // NaN and infinity are written as null by the serializer.
            if (v.is_null()) throw ValidationError(where + "non-finite weight");
            if (!v.is_number()) throw ParseError(where + "weights must be numbers");
            data.push_back(v.get<double>());
        }
    }
    return Layer(Matrix(rows.size(), cols, std::move(data)), activation_from_json(require(j, "activation")),
                 has_bias.get<bool>());
}

}  // namespace

std::string save_network(const Network& net) {
    // Hand-written so each weight row sits on one line; numbers go through
    // format_number, which is lossless.
    std::string out = "{\n  \"format_version\": " + std::to_string(kNetworkFormatVersion) + ",\n";
    out += "  \"input_dim\": " + std::to_string(net.input_dim()) + ",\n";
    out += "  \"layers\": [\n";
    for (std::size_t k = 0; k < net.depth(); ++k) {
        const Layer& l = net.layer(k);
        out += "    {\n      \"activation\": " + activation_to_json(l.activation()).dump() + ",\n";
        out += std::string("      \"has_bias\": ") + (l.has_bias() ? "true" : "false") + ",\n";
        out += "      \"weights\": [\n";
        for (std::size_t r = 0; r < l.weights().rows(); ++r) {
            out += "        [";
            const auto row = l.weights().row(r);
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ", ";
                out += format_number(row[c]);
            }
            out += r + 1 < l.weights().rows() ? "],\n" : "]\n";
        }
        out += "      ]\n    }";
        out += k + 1 < net.depth() ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

Network load_network(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed network document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network document must be a JSON object");

    const json& version = require(doc, "format_version");
    if (!version.is_number_integer()) throw ParseError("format_version must be an integer");
    if (version.get<long long>() != kNetworkFormatVersion) {
        throw VersionError("unsupported format_version " + version.dump());
    }

    const json& input_dim = require(doc, "input_dim");
    if (!input_dim.is_number_integer()) throw ParseError("input_dim must be an integer");
    if (input_dim.get<long long>() <= 0) throw ValidationError("input_dim must be positive");

    const json& layers_json = require(doc, "layers");
    if (!layers_json.is_array()) throw ParseError("layers must be an array");
    std::vector<Layer> layers;
    for (std::size_t k = 0; k < layers_json.size(); ++k) layers.push_back(layer_from_json(layers_json[k], k));
    return Network(input_dim.get<std::size_t>(), std::move(layers));
}

Dataset load_dataset(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs) {
    const auto lines = split(csv, '\n');
    std::size_t line_no = 0;
    while (line_no < lines.size() && trim(lines[line_no]).empty()) ++line_no;
    if (line_no == lines.size()) throw ParseError("dataset has no header row");

    const auto header = split(trim(lines[line_no]), ',');
    std::vector<std::string> expected;
    for (std::size_t i = 1; i <= n_inputs; ++i) expected.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= n_outputs; ++j) expected.push_back("d" + std::to_string(j));
    bool header_ok = header.size() == expected.size();
    for (std::size_t c = 0; header_ok && c < header.size(); ++c) header_ok = trim(header[c]) == expected[c];
    if (!header_ok) {
        throw ValidationError("dataset header \"" + std::string(trim(lines[line_no])) + "\" does not describe " +
                              std::to_string(n_inputs) + " inputs and " + std::to_string(n_outputs) + " targets");
    }

    Dataset data;
    for (++line_no; line_no < lines.size(); ++line_no) {
        const auto line = trim(lines[line_no]);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        const std::string where = "dataset line " + std::to_string(line_no + 1) + ": ";
        if (fields.size() != expected.size()) {
            throw ParseError(where + "expected " + std::to_string(expected.size()) + " fields, found " +
                             std::to_string(fields.size()));
        }
        Sample s;
        s.input.reserve(n_inputs);
        s.target.reserve(n_outputs);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            try {
                v = parse_number(fields[c]);
            } catch (const ParseError& e) {
                throw ParseError(where + e.what());
            }
            (c < n_inputs ? s.input : s.target).push_back(v);
        }
        data.push_back(std::move(s));
    }
    return data;
}

std::string save_dataset(std::span<const Sample> dataset) {
    std::string out;
    if (dataset.empty()) return out;
    const std::size_t n = dataset.front().input.size();
    const std::size_t m = dataset.front().target.size();
    for (std::size_t i = 1; i <= n; ++i) out += (i > 1 ? ",x" : "x") + std::to_string(i);
    for (std::size_t j = 1; j <= m; ++j) out += ",d" + std::to_string(j);
    out += '\n';
    for (const auto& s : dataset) {
        out += format_vector(s.input);
        out += ',';
        out += format_vector(s.target);
        out += '\n';
    }
    return out;
}

std::string format_trace_csv(const TrainReport& report) {
    std::string out = "epoch,error\n";
    for (std::size_t e = 0; e < report.error_trace.size(); ++e) {
        out += std::to_string(e + 1);
        out += ',';
        out += format_number(report.error_trace[e]);
        out += '\n';
    }
    return out;
}

NetworkShape parse_shape_spec(std::string_view spec) {
    const std::string full(spec);
    auto fail = [&](const std::string& why) { return ParseError("bad shape \"" + full + "\": " + why); };

    bool bias = false;
    spec = trim(spec);
    if (!spec.empty() && spec.back() == 'b') {
        bias = true;
        spec.remove_suffix(1);
    }
    const auto tokens = split(spec, '-');
    if (tokens.size() < 2) throw fail("need an input width and at least one layer");

    auto parse_size = [&](std::string_view digits) {
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() || n == 0) {
            throw fail("\"" + std::string(digits) + "\" is not a positive size");
        }
        return n;
    };

    NetworkShape shape;
    shape.input_dim = parse_size(tokens[0]);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
        std::string_view tok = tokens[t];
        if (tok.empty()) throw fail("empty layer");
        ActivationKind act = ActivationKind::identity();
        switch (tok.back()) {
            case 's':
                act = ActivationKind::sigmoid();
                break;
            case 'i':
                act = ActivationKind::identity();
                break;
            default:
                throw fail("layer \"" + std::string(tok) + "\" needs an 's' or 'i' suffix");
        }
        tok.remove_suffix(1);
        shape.layers.push_back({parse_size(tok), act, bias});
    }
    return shape;
}

std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("cannot format number");
    return std::string(buf.data(), ptr);
}

std::string format_vector(std::span<const double> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_number(v[i]);
    }
    return out;
}

double parse_number(std::string_view text) {
    auto s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError("\"" + std::string(trim(text)) + "\" is not a finite number");
    }
    return v;
}

Vector parse_vector(std::string_view text) {
    if (trim(text).empty()) throw ParseError("empty vector");
    Vector out;
    for (auto field : split(text, ',')) out.push_back(parse_number(field));
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace ffnn::io
