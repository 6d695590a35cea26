#include "risq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "risq/errors.hpp"
#include "risq/units.hpp"

namespace risq {

namespace {

using nlohmann::json;

const json& section(const json& doc, const char* name) {
    if (!doc.contains(name)) throw ConfigError(name, "missing section");
    const json& s = doc.at(name);
    if (!s.is_object()) throw ConfigError(name, "expected an object");
    return s;
}

void reject_unknown(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }
}

double number(const json& obj, const std::string& prefix, const char* key) {
    const std::string full = prefix + "." + key;
    if (!obj.contains(key)) throw ConfigError(full, "missing key");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(full, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(full, "expected a finite number");
    return d;
}

double number_or(const json& obj, const std::string& prefix, const char* key, double fallback) {
    return obj.contains(key) ? number(obj, prefix, key) : fallback;
}

int integer(const json& obj, const std::string& prefix, const char* key) {
    const std::string full = prefix + "." + key;
    if (!obj.contains(key)) throw ConfigError(full, "missing key");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(full, "expected an integer");
    const auto i = v.get<long long>();
    if (i < 1 || i > 1'000'000) throw ConfigError(full, "must be a positive integer");
    return static_cast<int>(i);
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key, what);
}

// Domain-type construction with the error re-labelled to a document key.
template <typename Fn>
auto build(const std::string& key, Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw ConfigError(key, e.what());
    }
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "scenario document must be a JSON object");
    reject_unknown(doc, "", {"panel", "placement", "radio"});

    const json& jp = section(doc, "panel");
    reject_unknown(jp, "panel",
                   {"rows", "cols", "cell_dx_m", "cell_dy_m", "bits", "levels_deg", "reflection"});
    const int rows = integer(jp, "panel", "rows");
    const int cols = integer(jp, "panel", "cols");
    const double dx = number(jp, "panel", "cell_dx_m");
    const double dy = number(jp, "panel", "cell_dy_m");
    require(dx > 0.0, "panel.cell_dx_m", "must be positive");
    require(dy > 0.0, "panel.cell_dy_m", "must be positive");
    const int bits = integer(jp, "panel", "bits");
    require(bits <= 16, "panel.bits", "must be at most 16");
    const double reflection = number_or(jp, "panel", "reflection", 1.0);
    require(reflection > 0.0 && reflection <= 1.0, "panel.reflection", "must be in (0, 1]");
    if (!jp.contains("levels_deg")) throw ConfigError("panel.levels_deg", "missing key");
    const json& jl = jp.at("levels_deg");
    require(jl.is_array(), "panel.levels_deg", "expected an array of numbers");
    std::vector<double> levels;
    for (const json& v : jl) {
        require(v.is_number(), "panel.levels_deg", "expected an array of numbers");
        levels.push_back(deg2rad(v.get<double>()));
    }
    RisPanel panel = build("panel.levels_deg", [&] {
        return RisPanel(rows, cols, dx, dy, bits, std::move(levels), reflection);
    });

    const json& jq = section(doc, "placement");
    reject_unknown(jq, "placement",
                   {"d1_m", "d2_m", "theta_t_deg", "phi_t_deg", "theta_r_deg", "phi_r_deg"});
    const double d1 = number(jq, "placement", "d1_m");
    const double d2 = number(jq, "placement", "d2_m");
    require(d1 > 0.0, "placement.d1_m", "must be positive");
    require(d2 > 0.0, "placement.d2_m", "must be positive");
    const double tt = number(jq, "placement", "theta_t_deg");
    const double tr = number(jq, "placement", "theta_r_deg");
    require(tt >= 0.0 && tt < 90.0, "placement.theta_t_deg", "must be in [0, 90)");
    require(tr >= 0.0 && tr < 90.0, "placement.theta_r_deg", "must be in [0, 90)");
    const double pt = number(jq, "placement", "phi_t_deg");
    const double pr = number(jq, "placement", "phi_r_deg");
    Placement placement = build("placement", [&] {
        return Placement(d1, d2, deg2rad(tt), deg2rad(pt), deg2rad(tr), deg2rad(pr));
    });

    const json& jr = section(doc, "radio");
    reject_unknown(jr, "radio",
                   {"freq_ghz", "tx_power_dbm", "gain_tx_dbi", "gain_rx_dbi", "cell_alpha"});
    const double freq = number(jr, "radio", "freq_ghz");
    require(freq > 0.0, "radio.freq_ghz", "must be positive");
    const double ptx = number(jr, "radio", "tx_power_dbm");
    const double gt = number(jr, "radio", "gain_tx_dbi");
    const double gr = number(jr, "radio", "gain_rx_dbi");
    const double cell_alpha = number_or(jr, "radio", "cell_alpha", 1.0);
    require(cell_alpha >= 0.0, "radio.cell_alpha", "must be >= 0");
    build("radio.gain_tx_dbi", [&] { return gain_dbi_to_alpha(gt); });
    build("radio.gain_rx_dbi", [&] { return gain_dbi_to_alpha(gr); });
    RadioConfig radio = build("radio", [&] {
        return RadioConfig(kSpeedOfLight / (freq * 1e9), ptx, gt, gr, cell_alpha);
    });

    return Scenario{std::move(panel), placement, radio};
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario", "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_fixed(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0.0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

MethodSpec parse_method(std::string_view token) {
    const auto colon = token.find(':');
    const std::string_view head = token.substr(0, colon);
    MethodSpec spec;
    if (head == "continuous") {
        spec.kind = Method::Continuous;
    } else if (head == "dtpq") {
        spec.kind = Method::Dtpq;
    } else if (head == "eipq") {
        spec.kind = Method::Eipq;
    } else if (head == "fixed") {
        spec.kind = Method::Fixed;
    } else {
        throw ConfigError("methods", "unknown method '" + std::string(token) + "'");
    }
    if (colon == std::string_view::npos) return spec;

    if (spec.kind == Method::Continuous || spec.kind == Method::Dtpq) {
        throw ConfigError("methods", "method '" + std::string(head) + "' takes no parameter");
    }
    const std::string arg(token.substr(colon + 1));
    std::size_t used = 0;
    double deg = 0.0;
    try {
        deg = std::stod(arg, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != arg.size() || !std::isfinite(deg)) {
        throw ConfigError("methods", "bad parameter in '" + std::string(token) + "'");
    }
    spec.param = spec.kind == Method::Fixed ? wrap_two_pi(deg2rad(deg)) : deg2rad(deg);
    return spec;
}

std::vector<MethodSpec> parse_method_list(std::string_view csv) {
    std::vector<MethodSpec> out;
    std::set<std::string> seen;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string_view token =
            csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (token.empty()) throw ConfigError("methods", "empty method in list");
        out.push_back(parse_method(token));
        if (!seen.insert(out.back().name()).second) {
            throw ConfigError("methods", "method '" + out.back().name() + "' listed twice");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void write_shifts_csv(std::ostream& out, const ShiftMatrix& shifts) {
    out << "n,m,level_index,level_deg\n";
    for (std::size_t r = 0; r < shifts.rows(); ++r) {
        for (std::size_t c = 0; c < shifts.cols(); ++c) {
            out << (c + 1) << ',' << (r + 1) << ',' << shifts.level_index(r, c) << ','
                << format_fixed(rad2deg(shifts.phase(r, c))) << '\n';
        }
    }
}

ShiftMatrix read_shifts_csv(std::istream& in, const RisPanel& panel) {
    std::string line;
    if (!std::getline(in, line) || line != "n,m,level_index,level_deg") {
        throw ConfigError("shifts", "expected header n,m,level_index,level_deg");
    }
    const auto rows = static_cast<std::size_t>(panel.rows());
    const auto cols = static_cast<std::size_t>(panel.cols());
    Grid<std::uint16_t> idx(rows, cols);
    Grid<char> seen(rows, cols, 0);
    std::size_t count = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        long n = 0, m = 0, level = 0;
        double deg = 0.0;
        char trailing = 0;
        if (std::sscanf(line.c_str(), "%ld,%ld,%ld,%lf%c", &n, &m, &level, &deg, &trailing) != 4) {
            throw ConfigError("shifts", "malformed row at line " + std::to_string(line_no));
        }
        if (n < 1 || n > panel.cols() || m < 1 || m > panel.rows()) {
            throw ConfigError("shifts", "cell index out of range at line " + std::to_string(line_no));
        }
        if (level < 0 || level >= panel.level_count()) {
            throw ConfigError("shifts", "level index out of range at line " + std::to_string(line_no));
        }
        const auto r = static_cast<std::size_t>(m - 1);
        const auto c = static_cast<std::size_t>(n - 1);
        if (seen(r, c)) throw ConfigError("shifts", "duplicate cell at line " + std::to_string(line_no));
        seen(r, c) = 1;
        idx(r, c) = static_cast<std::uint16_t>(level);
        ++count;
    }
    if (count != rows * cols) throw ConfigError("shifts", "expected one row per cell");
    return ShiftMatrix(std::move(idx), panel.levels());
}

void write_sweep_csv(std::ostream& out, const std::vector<MethodSpec>& methods,
                     const std::vector<SweepRow>& rows) {
    std::set<std::string> names;
    out << "axis_value";
    for (const MethodSpec& m : methods) {
        if (!names.insert(m.name()).second) {
            throw ConfigError("methods", "method '" + m.name() + "' listed twice");
        }
        out << ',' << m.name() << "_dbm";
        if (m.kind != Method::Continuous) out << ',' << m.name() << "_threshold_deg";
    }
    out << '\n';
    for (const SweepRow& row : rows) {
        out << format_fixed(row.axis_value);
        for (std::size_t i = 0; i < methods.size(); ++i) {
            const MethodValue& v = row.values.at(i);
            out << ',' << format_fixed(v.power_dbm);
            if (methods[i].kind != Method::Continuous) {
                out << ',';
                if (v.threshold) out << format_fixed(rad2deg(*v.threshold));
            }
        }
        out << '\n';
    }
}

}  // namespace risq
