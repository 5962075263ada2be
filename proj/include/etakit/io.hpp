#pragma once

// JSON file formats.
//
//   matrix:  {"n": int, "entries": [[[re, im], ...], ...]}   row-major
//   vector:  {"n": int, "entries": [[re, im], ...]}
//   basis:   {"dimension": int, "basis": [matrix...], "classifications": [...]}
//   chain:   {"shift_alpha", "normalized", "etas", "residuals", "classes", "rank"}
//   spec:    {"V": [c0, ...], "alpha": r, "beta": r, "gamma": r, "f": [c0, ...]}
//   residual terms: [{"a": int, "b": int, "re": str, "im": str}, ...]
//
// Doubles are written in shortest round-trip form.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "etakit/chain.hpp"
#include "etakit/metric.hpp"
#include "etakit/weyl.hpp"

namespace etakit::io {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const MetricClass& c);
Json to_json(const MetricBasis& b);
Json to_json(const EtaChain& chain);

/// Throws InputError mentioning `where` on any schema violation: missing
/// keys, wrong n, ragged rows, non-numeric or non-finite entries.
ComplexMatrix matrix_from_json(const Json& j, std::string_view where = "matrix");
ComplexVector vector_from_json(const Json& j, std::string_view where = "vector");
ShiftedPotentialSpec spec_from_json(const Json& j, std::string_view where = "spec");
Json spec_to_json(const ShiftedPotentialSpec& spec);

template <class S>
Json residual_to_json(const BasicWeylPolynomial<S>& poly) {
    Json out = Json::array();
    for (const auto& [key, c] : poly.terms()) {
        out.push_back({{"a", key.first},
                       {"b", key.second},
                       {"re", WeylScalar<S>::real_string(c)},
                       {"im", WeylScalar<S>::imag_string(c)}});
    }
    return out;
}

/// Reads and parses a JSON file; InputError on missing file or bad JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

ComplexMatrix parse_matrix(const std::filesystem::path& path);
ComplexVector parse_vector(const std::filesystem::path& path);
ShiftedPotentialSpec parse_spec(const std::filesystem::path& path);

/// "a+bi" flag syntax: "1+1i", "-2.5i", "3", "i", "1e-3-2i". A trailing 'j'
/// is accepted as well.
Complex parse_complex(std::string_view text);

}  // namespace etakit::io
