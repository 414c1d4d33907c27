#include "hillbloch/io.hpp"

#include "json.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

namespace hillbloch::io {
namespace {

using Json = nlohmann::ordered_json;

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {  // parse_error, out_of_range, ...
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// [re, im] with both entries finite numbers.
std::complex<double> parse_complex(const Json& value, const std::string& where) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number()) {
        throw ParseError(where + ": expected a [re, im] pair of numbers");
    }
    const double re = value[0].get<double>();
    const double im = value[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError(where + ": non-finite component");
    }
    return {re, im};
}

Json dump_complex(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

ComplexVector<double> parse_complex_array(const Json& value, const std::string& where) {
    if (!value.is_array()) throw ParseError(where + ": expected an array");
    ComplexVector<double> out(static_cast<Eigen::Index>(value.size()));
    for (std::size_t k = 0; k < value.size(); ++k) {
        std::ostringstream slot;
        slot << where << "[" << k << "]";
        out[static_cast<Eigen::Index>(k)] = parse_complex(value[k], slot.str());
    }
    return out;
}

Json dump_complex_array(const ComplexVector<double>& values) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < values.size(); ++k) out.push_back(dump_complex(values[k]));
    return out;
}

const Json& require_field(const Json& object, const char* name) {
    if (!object.is_object()) throw ParseError("expected a JSON object at the top level");
    const auto it = object.find(name);
    if (it == object.end()) {
        throw ParseError(std::string("missing required field \"") + name + "\"");
    }
    return *it;
}

// Sparse potential form: keys are decimal frequency indices.  Index <= 0 is
// a domain violation (the potential is one-sided), not a syntax problem.
ComplexVector<double> parse_sparse_coeffs(const Json& object) {
    int degree = 0;
    std::vector<std::pair<int, std::complex<double>>> entries;
    for (const auto& [key, value] : object.items()) {
        int index = 0;
        const char* first = key.data();
        const char* last = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("coeffs key \"" + key + "\" is not an integer index");
        }
        if (index <= 0) {
            std::ostringstream os;
            os << "coefficient index " << index
               << " is outside the one-sided range (indices start at 1)";
            throw DomainError(os.str());
        }
        entries.emplace_back(index, parse_complex(value, "coeffs[\"" + key + "\"]"));
        degree = std::max(degree, index);
    }
    ComplexVector<double> coeffs = ComplexVector<double>::Zero(degree);
    for (const auto& [index, value] : entries) coeffs[index - 1] = value;
    return coeffs;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

PotentialSpec<double> parse_potential(const std::string& text) {
    const Json doc = parse_document(text);
    const Json& coeffs = require_field(doc, "coeffs");
    if (coeffs.is_object()) return PotentialSpec<double>(parse_sparse_coeffs(coeffs));
    return PotentialSpec<double>(parse_complex_array(coeffs, "coeffs"));
}

std::string serialize_potential(const PotentialSpec<double>& spec) {
    Json doc;
    doc["coeffs"] = dump_complex_array(spec.coeffs());
    return dump(doc);
}

NormingSequence<double> parse_norming(const std::string& text) {
    const Json doc = parse_document(text);
    return NormingSequence<double>(parse_complex_array(require_field(doc, "values"), "values"));
}

std::string serialize_norming(const NormingSequence<double>& sequence) {
    Json doc;
    doc["values"] = dump_complex_array(sequence.values());
    return dump(doc);
}

BlochSeries<double> parse_bloch_series(const std::string& text) {
    const Json doc = parse_document(text);
    const Json& n_field = require_field(doc, "n");
    if (!n_field.is_number_integer()) throw ParseError("n: expected an integer band index");
    BlochIndex<double> index;
    index.n = n_field.get<int>();
    index.t = parse_complex(require_field(doc, "t"), "t");

    BlochSeries<double> series(index,
                               parse_complex_array(require_field(doc, "coeffs"), "coeffs"));

    // "eigenvalue" is redundant (determined by n and t); accept it only if
    // it agrees with the recomputed value.
    const std::complex<double> stored =
        parse_complex(require_field(doc, "eigenvalue"), "eigenvalue");
    const std::complex<double> computed = series.eigenvalue();
    if (std::abs(stored - computed) > 1e-9 * (1.0 + std::abs(computed))) {
        throw ParseError("eigenvalue disagrees with the value determined by n and t");
    }
    return series;
}

std::string serialize_bloch_series(const BlochSeries<double>& series) {
    Json doc;
    doc["n"] = series.index().n;
    doc["t"] = dump_complex(series.index().t);
    doc["eigenvalue"] = dump_complex(series.eigenvalue());
    doc["coeffs"] = dump_complex_array(series.coeffs());
    return dump(doc);
}

std::string serialize_reports(const std::vector<VerificationReport>& reports) {
    Json out = Json::array();
    for (const VerificationReport& report : reports) {
        Json j;
        j["name"] = report.name;
        j["detail"] = report.detail;
        j["residual"] = report.residual;
        j["tolerance"] = report.tolerance;
        j["passed"] = report.passed;
        j["metrics"] = Json::object();
        for (const auto& [key, value] : report.metrics) j["metrics"][key] = value;
        j["traces"] = Json::object();
        for (const auto& [key, values] : report.traces) j["traces"][key] = values;
        out.push_back(std::move(j));
    }
    return dump(out);
}

std::string serialize_inverse_result(const InverseResult<double>& result) {
    Json doc;
    doc["coeffs"] = dump_complex_array(result.spec.coeffs());
    doc["diagnostics"] = {{"bounded", result.bounded}, {"max_modulus", result.max_modulus}};
    return dump(doc);
}

std::string serialize_error(const std::string& kind, const std::string& detail) {
    Json doc;
    doc["error"] = {{"kind", kind}, {"detail", detail}};
    return dump(doc);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failed on \"" + path + "\"");
    return buffer.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open \"" + tmp.string() + "\" for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed on \"" + tmp.string() + "\"");
    }

    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move temporary file into place at \"" + path + "\"");
    }
}

}  // namespace hillbloch::io
