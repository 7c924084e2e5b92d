// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/io.hpp"

#include "covspec/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace covspec::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw ValidationError("cannot format value");
    return std::string(buf, ptr);
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

template <class T>
T parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError("scenario key '" + std::string(key) + "': expected an integer, got '" +
                              std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    double v = 0.0;
    if (!parse_double(text, v)) {
        throw ValidationError("scenario key '" + std::string(key) + "': expected a number, got '" +
                              std::string(trim(text)) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    const std::string s = lowercase(trim(text));
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ValidationError("scenario key '" + std::string(key) + "': expected a boolean");
}

}  // namespace

Matrix parse_csv(std::istream& in) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool first_content = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], row[j])) {
                numeric = false;
                break;
            }
        }
        if (first_content) {
            first_content = false;
            cols = fields.size();
            if (!numeric) continue;  // header
        }
        if (!numeric) {
            throw ValidationError("CSV line " + std::to_string(line_no) + ": non-numeric field");
        }
        if (fields.size() != cols) {
            std::ostringstream msg;
            msg << "CSV line " << line_no << ": expected " << cols << " fields, found " << fields.size();
            throw ValidationError(msg.str());
        }
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw ValidationError("CSV contains no data rows");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = values[i * cols + j];
    return m;
}

Matrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "' for reading");
    try {
        return parse_csv(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_csv(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    write_csv(out, m);
    if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::string reports_to_json(std::span<const TestReport> reports, int indent) {
    nlohmann::ordered_json doc;
    doc["schema"] = kReportSchema;
    auto& arr = doc["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["test"] = r.test_name;
        j["statistic"] = r.statistic;
        if (const auto* chi = std::get_if<ChiSquared>(&r.reference)) {
            j["reference"] = {{"distribution", "chi2"}, {"df", chi->df}};
        } else {
            j["reference"] = {{"distribution", "normal"}};
        }
        j["side"] = to_string(r.side);
        j["p_value"] = r.p_value;
        j["alpha"] = r.alpha;
        j["reject"] = r.reject;
        j["null"] = to_string(r.null_kind);
        j["n"] = r.n;
        j["p"] = r.p;
        j["mean_known"] = r.mean_known;
        if (r.params_used) {
            j["params"] = {{"q_n", r.params_used->q},
                           {"kappa", r.params_used->kappa},
                           {"beta", r.params_used->beta},
                           {"beta_source", r.beta_estimated ? "estimated" : "fixed"}};
        }
        if (r.wst_rescaled) j["wst_rescaled"] = *r.wst_rescaled;
        arr.push_back(std::move(j));
    }
    return doc.dump(indent);
}

std::string summary_line(const TestReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << r.test_name << ": statistic=" << r.statistic << " ref=" << to_string(r.reference)
        << " side=" << to_string(r.side) << " p=" << r.p_value << " alpha=" << r.alpha
        << (r.reject ? " REJECT" : " accept") << " (null=" << to_string(r.null_kind) << ", n=" << r.n
        << ", p=" << r.p;
    if (r.params_used) {
        out << ", q_n=" << r.params_used->q << ", kappa=" << r.params_used->kappa
            << ", beta=" << r.params_used->beta << (r.beta_estimated ? " [estimated]" : "");
    }
    out << ")";
    return out.str();
}

std::string summary_csv_header() { return "test,n,p,population,truth,rho,reps,rejections,rate,stderr,failures\n"; }

std::string summary_csv_rows(const sim::SimSummary& summary) {
    const auto& s = summary.scenario;
    std::ostringstream out;
    for (const auto& t : summary.tallies) {
        char rate[32];
        char se[32];
        std::snprintf(rate, sizeof rate, "%.4f", t.rate());
        std::snprintf(se, sizeof se, "%.4f", t.stderr_rate());
        out << to_string(t.test) << ',' << s.n << ',' << s.p << ',' << sim::to_string(s.population) << ','
            << sim::to_string(s.truth) << ',' << format_double(s.rho) << ',' << t.reps << ',' << t.rejections
            << ',' << rate << ',' << se << ',' << t.failures << '\n';
    }
    return out.str();
}

void apply_scenario_setting(sim::SimScenario& s, std::string_view raw_key, std::string_view value) {
    const std::string key = lowercase(trim(raw_key));
    value = trim(value);
    if (key == "n") {
        s.n = parse_integer<std::int64_t>(key, value);
    } else if (key == "p") {
        s.p = parse_integer<std::int64_t>(key, value);
    } else if (key == "population") {
        s.population = sim::parse_population(value);
    } else if (key == "mu0") {
        s.mu0 = parse_real(key, value);
    } else if (key == "gamma_shape") {
        s.gamma_shape = parse_real(key, value);
    } else if (key == "gamma_scale") {
        s.gamma_scale = parse_real(key, value);
    } else if (key == "rho") {
        s.rho = parse_real(key, value);
        s.truth = s.rho == 0.0 ? sim::Truth::Null : sim::Truth::Tridiagonal;
    } else if (key == "tests") {
        s.tests.clear();
        for (auto field : split_fields(value)) {
            field = trim(field);
            if (!field.empty()) s.tests.push_back(parse_test_kind(field));
        }
    } else if (key == "alpha") {
        s.alpha = parse_real(key, value);
    } else if (key == "reps") {
        s.reps = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
        s.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "side") {
        const std::string v = lowercase(value);
        if (v == "upper") s.side = Tail::Upper;
        else if (v == "two-sided" || v == "two_sided" || v == "both") s.side = Tail::TwoSided;
        else throw ValidationError("scenario key 'side': expected upper or two-sided");
    } else if (key == "beta") {
        const std::string v = lowercase(value);
        if (v == "known" || v == "auto") s.beta.reset();
        else s.beta = parse_real(key, value);
    } else if (key == "estimate_beta") {
        s.estimate_beta = parse_bool(key, value);
    } else if (key == "workers") {
        s.workers = parse_integer<unsigned>(key, value);
    } else {
        throw ValidationError("unknown scenario key '" + key + "'");
    }
}

sim::SimScenario load_scenario(std::istream& in, sim::SimScenario base, std::vector<std::string>* keys_seen) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("scenario line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = view.substr(0, eq);
        try {
            apply_scenario_setting(base, key, view.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError("scenario line " + std::to_string(line_no) + ": " + e.what());
        }
        if (keys_seen) keys_seen->push_back(lowercase(trim(key)));
    }
    return base;
}

sim::SimScenario load_scenario_file(const std::string& path, sim::SimScenario base,
                                    std::vector<std::string>* keys_seen) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    return load_scenario(in, std::move(base), keys_seen);
}

}  // namespace covspec::io
