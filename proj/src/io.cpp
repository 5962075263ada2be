#include "etakit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace etakit::io {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_pair(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError(where + ": expected a [re, im] pair of numbers");
    }
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InputError(where + ": non-finite entry");
    }
    return z;
}

std::size_t dimension_field(const Json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() <= 0) {
        throw InputError(where + ": \"n\" must be a positive integer");
    }
    if (!j.contains("entries") || !j["entries"].is_array()) {
        throw InputError(where + ": \"entries\" must be an array");
    }
    return j["n"].get<std::size_t>();
}

std::vector<double> real_coefficients(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of real coefficients");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw InputError(where + "[" + std::to_string(i) + "]: coefficients must be real numbers");
        }
        out.push_back(j[i].get<double>());
    }
    return out;
}

double real_field(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
    if (!j[key].is_number()) throw InputError(where + ": \"" + key + "\" must be a real number");
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) throw InputError(where + ": \"" + key + "\" must be finite");
    return v;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"n", m.rows()}, {"entries", std::move(rows)}};
}

Json to_json(const ComplexVector& v) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_pair(v(i)));
    return Json{{"n", v.size()}, {"entries", std::move(entries)}};
}

Json to_json(const MetricClass& c) {
    return Json{{"hermitian", c.hermitian},
                {"invertible", c.invertible},
                {"positive", c.positive},
                {"min_singular_value", c.min_singular_value},
                {"min_eigenvalue_of_hermitian_part", c.min_eigenvalue_of_hermitian_part},
                {"hermiticity_defect", c.hermiticity_defect}};
}

Json to_json(const MetricBasis& b) {
    Json basis = Json::array();
    Json classes = Json::array();
    for (const auto& m : b.basis) basis.push_back(to_json(m));
    for (const auto& c : b.classifications) classes.push_back(to_json(c));
    return Json{{"dimension", b.dimension()}, {"basis", std::move(basis)},
                {"classifications", std::move(classes)}};
}

Json to_json(const EtaChain& chain) {
    Json etas = Json::array();
    Json classes = Json::array();
    for (const auto& m : chain.etas) etas.push_back(to_json(m));
    for (const auto& c : chain.classes) classes.push_back(to_json(c));
    Json degenerate = Json::array();
    for (bool d : chain.degenerate) degenerate.push_back(d);
    return Json{{"shift_alpha", chain.shift_alpha},
                {"normalized", chain.normalized},
                {"etas", std::move(etas)},
                {"residuals", chain.residuals},
                {"classes", std::move(classes)},
                {"degenerate", std::move(degenerate)},
                {"rank", chain.rank}};
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view where_view) {
    const std::string where(where_view);
    const std::size_t n = dimension_field(j, where);
    const Json& rows = j["entries"];
    if (rows.size() != n) {
        throw InputError(where + ": expected " + std::to_string(n) + " rows, got " +
                         std::to_string(rows.size()));
    }
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = rows[r];
        const std::string row_where = where + ".entries[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != n) {
            throw InputError(row_where + ": expected " + std::to_string(n) + " entries (ragged or non-square)");
        }
        for (std::size_t c = 0; c < n; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_pair(row[c], row_where + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

ComplexVector vector_from_json(const Json& j, std::string_view where_view) {
    const std::string where(where_view);
    const std::size_t n = dimension_field(j, where);
    const Json& entries = j["entries"];
    if (entries.size() != n) {
        throw InputError(where + ": expected " + std::to_string(n) + " entries, got " +
                         std::to_string(entries.size()));
    }
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        v(static_cast<Eigen::Index>(i)) =
            complex_from_pair(entries[i], where + ".entries[" + std::to_string(i) + "]");
    }
    return v;
}

ShiftedPotentialSpec spec_from_json(const Json& j, std::string_view where_view) {
    const std::string where(where_view);
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    ShiftedPotentialSpec spec;
    if (!j.contains("V")) throw InputError(where + ": missing \"V\"");
    spec.potential = RealPolynomial(real_coefficients(j["V"], where + ".V"));
    spec.alpha = real_field(j, "alpha", where);
    spec.beta = real_field(j, "beta", where);
    spec.gamma = real_field(j, "gamma", where);
    if (j.contains("f")) spec.momentum = RealPolynomial(real_coefficients(j["f"], where + ".f"));
    return spec;
}

Json spec_to_json(const ShiftedPotentialSpec& spec) {
    return Json{{"V", spec.potential.coeffs()},
                {"alpha", spec.alpha},
                {"beta", spec.beta},
                {"gamma", spec.gamma},
                {"f", spec.momentum.coeffs()}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path.string());
    out << text;
    if (!out) throw InputError("failed writing file: " + path.string());
}

ComplexMatrix parse_matrix(const std::filesystem::path& path) {
    return matrix_from_json(read_json_file(path), path.string());
}

ComplexVector parse_vector(const std::filesystem::path& path) {
    return vector_from_json(read_json_file(path), path.string());
}

ShiftedPotentialSpec parse_spec(const std::filesystem::path& path) {
    return spec_from_json(read_json_file(path), path.string());
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw InputError("invalid complex number '" + std::string(whole) + "'");
    }
    return v;
}

// "i", "+i", "-i", "2.5i"
double parse_imag(std::string_view s, std::string_view whole) {
    s.remove_suffix(1);
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string compact;
    for (char ch : text) {
        if (ch != ' ') compact += ch;
    }
    std::string_view s = compact;
    if (s.empty()) throw InputError("empty complex number");
    const bool has_imag = s.back() == 'i' || s.back() == 'j';
    if (!has_imag) return {parse_real(s, text), 0.0};

    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_imag(s, text)};
    return {parse_real(s.substr(0, split), text), parse_imag(s.substr(split), text)};
}

}  // namespace etakit::io
