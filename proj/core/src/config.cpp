#include "majam/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "majam/units.hpp"

namespace majam {

namespace {

constexpr std::pair<JamMode, std::string_view> kModeNames[] = {
    {JamMode::None, "none"},
    {JamMode::FpaPartial, "fpa-partial"},
    {JamMode::FpaFull, "fpa-full"},
    {JamMode::MaPartial, "ma-partial"},
    {JamMode::MaFull, "ma-full"},
};

// ---------------------------------------------------------------------------
// Minimal TOML-like reader: [section], key = value, '#' comments.
// Values are numbers, "strings", true/false, or [flat, arrays].

struct Value
{
    enum class Kind { Number, String, Bool, Array };
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string text;
    bool flag = false;
    std::vector<Value> items;
};

using Table = std::map<std::string, Value>;
using Document = std::map<std::string, Table>;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(std::string_view line)
{
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

std::optional<double> parse_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return out;
}

class ValueReader
{
public:
    ValueReader(std::string_view src, int line) : src_(src), line_(line) {}

    Value read_all()
    {
        Value v = read();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing characters after value");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ConfigError("", "line " + std::to_string(line_) + ": " + msg);
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    Value read()
    {
        skip_ws();
        if (pos_ >= src_.size()) fail("missing value");
        const char c = src_[pos_];
        if (c == '"') return read_string();
        if (c == '[') return read_array();
        return read_scalar();
    }

    Value read_string()
    {
        Value v;
        v.kind = Value::Kind::String;
        ++pos_;
        while (pos_ < src_.size() && src_[pos_] != '"') {
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
            v.text.push_back(src_[pos_++]);
        }
        if (pos_ >= src_.size()) fail("unterminated string");
        ++pos_;
        return v;
    }

    Value read_array()
    {
        Value v;
        v.kind = Value::Kind::Array;
        ++pos_;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ']') {
            ++pos_;
            return v;
        }
        for (;;) {
            v.items.push_back(read());
            skip_ws();
            if (pos_ >= src_.size()) fail("unterminated array");
            if (src_[pos_] == ',') {
                ++pos_;
                skip_ws();
                if (pos_ < src_.size() && src_[pos_] == ']') {
                    ++pos_;
                    return v;
                }
                continue;
            }
            if (src_[pos_] == ']') {
                ++pos_;
                return v;
            }
            fail("expected ',' or ']' in array");
        }
    }

    Value read_scalar()
    {
        const auto end = src_.find_first_of(",]", pos_);
        const auto token = trim(src_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_));
        pos_ = end == std::string_view::npos ? src_.size() : end;
        Value v;
        if (token == "true" || token == "false") {
            v.kind = Value::Kind::Bool;
            v.flag = token == "true";
            return v;
        }
        const auto num = parse_number(token);
        if (!num) fail("cannot parse value '" + std::string(token) + "'");
        v.number = *num;
        return v;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_;
};

int bracket_balance(std::string_view s)
{
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (in_string) continue;
        if (s[i] == '[') ++depth;
        if (s[i] == ']') --depth;
    }
    return depth;
}

Document read_document(std::string_view text)
{
    Document doc;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '[' && body.find('=') == std::string_view::npos) {
            if (body.back() != ']') throw ConfigError("", "line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            if (section.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty section name");
            doc[section];
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(body.substr(0, eq)));
        std::string value_text(trim(body.substr(eq + 1)));
        const int start_line = line_no;
        // arrays may continue over several lines
        while (bracket_balance(value_text) > 0 && std::getline(in, raw)) {
            ++line_no;
            value_text += " " + strip_comment(raw);
        }
        if (key.empty()) throw ConfigError("", "line " + std::to_string(start_line) + ": empty key");
        if (section.empty())
            throw ConfigError(key, "line " + std::to_string(start_line) + ": key '" + key + "' outside of any section");
        auto& table = doc[section];
        if (table.count(key)) throw ConfigError(section + "." + key, "duplicate key '" + section + "." + key + "'");
        table[key] = ValueReader(value_text, start_line).read_all();
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Typed accessors

double as_number(const Value& v, const std::string& field)
{
    if (v.kind != Value::Kind::Number) throw ConfigError(field, field + ": expected a number");
    return v.number;
}

int as_int(const Value& v, const std::string& field)
{
    const double x = as_number(v, field);
    if (std::floor(x) != x || std::abs(x) > 1e9) throw ConfigError(field, field + ": expected an integer");
    return static_cast<int>(x);
}

bool as_bool(const Value& v, const std::string& field)
{
    if (v.kind != Value::Kind::Bool) throw ConfigError(field, field + ": expected true or false");
    return v.flag;
}

std::string as_string(const Value& v, const std::string& field)
{
    if (v.kind != Value::Kind::String) throw ConfigError(field, field + ": expected a string");
    return v.text;
}

std::vector<double> as_numbers(const Value& v, const std::string& field)
{
    if (v.kind != Value::Kind::Array) throw ConfigError(field, field + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& item : v.items) out.push_back(as_number(item, field));
    return out;
}

Point2 as_point(const Value& v, const std::string& field)
{
    const auto xs = as_numbers(v, field);
    if (xs.size() != 2) throw ConfigError(field, field + ": expected [x, y]");
    return {xs[0], xs[1]};
}

// "30 dBm", "1 W", "10 mW", or a bare number taken as dBm.
double as_power_w(const Value& v, const std::string& field)
{
    if (v.kind == Value::Kind::Number) return dbm_to_watts(v.number);
    const auto text = as_string(v, field);
    const auto body = trim(text);
    const auto split = body.find_first_of(" \tdDmW");
    const auto number = parse_number(body.substr(0, split));
    const auto unit = split == std::string_view::npos ? std::string_view{} : trim(body.substr(split));
    if (!number) throw ConfigError(field, field + ": cannot parse power '" + text + "'");
    if (unit == "dBm") return dbm_to_watts(*number);
    if (unit == "W") return *number;
    if (unit == "mW") return *number * 1e-3;
    throw ConfigError(field, field + ": unknown power unit in '" + text + "' (use dBm, W or mW)");
}

// Linear gain: bare number is linear, "-30 dB" is converted.
double as_gain(const Value& v, const std::string& field)
{
    if (v.kind == Value::Kind::Number) return v.number;
    const auto text = as_string(v, field);
    const auto body = trim(text);
    const auto split = body.find_first_of(" \td");
    const auto number = parse_number(body.substr(0, split));
    const auto unit = split == std::string_view::npos ? std::string_view{} : trim(body.substr(split));
    if (!number || unit != "dB") throw ConfigError(field, field + ": expected a linear number or \"<x> dB\"");
    return db_to_linear(*number);
}

std::string format_double(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string format_array(const std::vector<double>& xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(xs[i]);
    }
    return out + "]";
}

void require(bool ok, const std::string& field, const std::string& message)
{
    if (!ok) throw ConfigError(field, field + ": " + message);
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(PrecoderScheme scheme)
{
    return scheme == PrecoderScheme::ZeroForcing ? "zf" : "mrt";
}

std::string_view to_string(JamMode mode)
{
    for (const auto& [m, name] : kModeNames)
        if (m == mode) return name;
    return "?";
}

std::string_view to_string(PartialStrategy strategy)
{
    return strategy == PartialStrategy::PaperSca ? "paper-sca" : "mrt-equal-power";
}

std::optional<PartialStrategy> parse_partial_strategy(std::string_view name)
{
    if (name == "paper-sca") return PartialStrategy::PaperSca;
    if (name == "mrt-equal-power") return PartialStrategy::MrtEqualPower;
    return std::nullopt;
}

std::optional<PrecoderScheme> parse_precoder(std::string_view name)
{
    if (name == "zf" || name == "zero-forcing") return PrecoderScheme::ZeroForcing;
    if (name == "mrt") return PrecoderScheme::Mrt;
    return std::nullopt;
}

std::optional<JamMode> parse_jam_mode(std::string_view name)
{
    for (const auto& [m, n] : kModeNames)
        if (n == name) return m;
    return std::nullopt;
}

const std::vector<JamMode>& all_jam_modes()
{
    static const std::vector<JamMode> modes{JamMode::None, JamMode::FpaPartial, JamMode::FpaFull,
                                            JamMode::MaPartial, JamMode::MaFull};
    return modes;
}

double SystemConfig::noise_for(int user) const
{
    if (noise_per_user_w.empty()) return noise_power_w;
    return noise_per_user_w.at(static_cast<std::size_t>(user));
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(message), field_(std::move(field))
{
}

SystemConfig default_config()
{
    SystemConfig c;
    c.bs_power_w = dbm_to_watts(40.0);
    c.jammer_power_w = dbm_to_watts(30.0);
    c.noise_power_w = dbm_to_watts(-80.0);
    c.pathloss_ref_bs = db_to_linear(-30.0);
    c.pathloss_ref_jam = db_to_linear(-40.0);
    c.array_half_length_m = c.n_jammer_antennas * c.wavelength_m;
    c.min_spacing_m = 2.0 * c.wavelength_m;
    c.algorithm.trust_radius_m = c.wavelength_m / 10.0;
    return c;
}

void validate(const SystemConfig& c)
{
    require(c.n_bs_antennas >= 1, "system.n_bs_antennas", "must be positive");
    require(c.n_users >= 1, "system.n_users", "must be positive");
    require(c.n_jammer_antennas >= 1, "system.n_jammer_antennas", "must be positive");
    require(c.n_paths >= 1, "system.n_paths", "must be positive");
    require(c.n_users <= c.n_bs_antennas, "system.n_users",
            "K <= N violated (K=" + std::to_string(c.n_users) + ", N=" + std::to_string(c.n_bs_antennas) + ")");
    require(c.n_users <= c.n_jammer_antennas, "system.n_users",
            "K <= M violated (K=" + std::to_string(c.n_users) + ", M=" + std::to_string(c.n_jammer_antennas) + ")");

    require(c.wavelength_m > 0.0, "system.wavelength_m", "must be > 0");
    require(c.array_half_length_m > 0.0, "system.array_half_length_m", "must be > 0");
    require(c.min_spacing_m > 0.0, "system.min_spacing_m", "must be > 0");
    require(std::abs(c.min_spacing_m - 2.0 * c.wavelength_m) <= 1e-12 * c.wavelength_m, "system.min_spacing_m",
            "must equal 2 * wavelength_m");
    require(c.array_half_length_m >= (c.n_jammer_antennas - 1) * c.wavelength_m * (1.0 - 1e-12),
            "system.array_half_length_m", "array does not fit: need L >= (M-1) * wavelength");

    require(c.bs_power_w >= 0.0, "system.p_bs", "must be >= 0");
    require(c.jammer_power_w >= 0.0, "system.p_j", "must be >= 0");
    require(c.noise_power_w > 0.0, "system.noise", "must be > 0");
    if (!c.noise_per_user_w.empty()) {
        require(static_cast<int>(c.noise_per_user_w.size()) == c.n_users, "system.noise_w_per_user",
                "needs exactly K entries");
        for (double n : c.noise_per_user_w) require(n > 0.0, "system.noise_w_per_user", "entries must be > 0");
    }
    require(c.pathloss_ref_bs > 0.0, "system.pathloss_ref_bs", "must be > 0");
    require(c.pathloss_ref_jam > 0.0, "system.pathloss_ref_jam", "must be > 0");
    require(c.alpha_bs > 0.0, "system.alpha_bs", "must be > 0");
    require(c.alpha_jam > 0.0, "system.alpha_jam", "must be > 0");
    require(c.rate_threshold_bps_hz > 0.0, "system.rate_threshold_bps_hz", "must be > 0");

    require(c.geometry.user_radius_m > 0.0, "geometry.user_radius_m", "must be > 0");

    const auto& a = c.algorithm;
    require(a.epsilon >= 0.0, "algorithm.epsilon", "must be >= 0");
    require(a.t1_max >= 1, "algorithm.t1_max", "must be >= 1");
    require(a.t2_max >= 1, "algorithm.t2_max", "must be >= 1");
    require(a.trust_radius_m > 0.0, "algorithm.trust_radius_m", "must be > 0");
    require(a.monte_carlo_runs >= 1, "algorithm.monte_carlo_runs", "must be >= 1");

    for (double p : c.sweep.powers_w) require(p >= 0.0, "sweep.powers_w", "powers must be >= 0");
    require(!c.sweep.modes.empty(), "sweep.modes", "needs at least one mode");
}

SystemConfig parse_config(std::string_view text)
{
    const Document doc = read_document(text);
    SystemConfig c = default_config();
    std::set<std::string> seen;

    using Handler = std::function<void(const Value&, const std::string&)>;
    const std::map<std::string, std::map<std::string, Handler>> schema{
        {"system",
         {
             {"n_bs_antennas", [&](auto& v, auto& f) { c.n_bs_antennas = as_int(v, f); }},
             {"n_users", [&](auto& v, auto& f) { c.n_users = as_int(v, f); }},
             {"n_jammer_antennas", [&](auto& v, auto& f) { c.n_jammer_antennas = as_int(v, f); }},
             {"wavelength_m", [&](auto& v, auto& f) { c.wavelength_m = as_number(v, f); }},
             {"array_half_length_m", [&](auto& v, auto& f) { c.array_half_length_m = as_number(v, f); }},
             {"min_spacing_m", [&](auto& v, auto& f) { c.min_spacing_m = as_number(v, f); }},
             {"p_bs", [&](auto& v, auto& f) { c.bs_power_w = as_power_w(v, f); }},
             {"p_bs_w", [&](auto& v, auto& f) { c.bs_power_w = as_number(v, f); }},
             {"p_j", [&](auto& v, auto& f) { c.jammer_power_w = as_power_w(v, f); }},
             {"p_j_w", [&](auto& v, auto& f) { c.jammer_power_w = as_number(v, f); }},
             {"noise", [&](auto& v, auto& f) { c.noise_power_w = as_power_w(v, f); }},
             {"noise_w", [&](auto& v, auto& f) { c.noise_power_w = as_number(v, f); }},
             {"noise_w_per_user", [&](auto& v, auto& f) { c.noise_per_user_w = as_numbers(v, f); }},
             {"pathloss_ref_bs", [&](auto& v, auto& f) { c.pathloss_ref_bs = as_gain(v, f); }},
             {"pathloss_ref_bs_db", [&](auto& v, auto& f) { c.pathloss_ref_bs = db_to_linear(as_number(v, f)); }},
             {"pathloss_ref_jam", [&](auto& v, auto& f) { c.pathloss_ref_jam = as_gain(v, f); }},
             {"pathloss_ref_jam_db", [&](auto& v, auto& f) { c.pathloss_ref_jam = db_to_linear(as_number(v, f)); }},
             {"alpha_bs", [&](auto& v, auto& f) { c.alpha_bs = as_number(v, f); }},
             {"alpha_jam", [&](auto& v, auto& f) { c.alpha_jam = as_number(v, f); }},
             {"n_paths", [&](auto& v, auto& f) { c.n_paths = as_int(v, f); }},
             {"rate_threshold_bps_hz", [&](auto& v, auto& f) { c.rate_threshold_bps_hz = as_number(v, f); }},
             {"precoder",
              [&](auto& v, auto& f) {
                  const auto name = as_string(v, f);
                  const auto scheme = parse_precoder(name);
                  if (!scheme) throw ConfigError(f, f + ": unknown precoder '" + name + "' (zf, mrt)");
                  c.precoder = *scheme;
              }},
             {"random_user_antenna", [&](auto& v, auto& f) { c.random_user_antenna = as_bool(v, f); }},
         }},
        {"geometry",
         {
             {"bs", [&](auto& v, auto& f) { c.geometry.bs = as_point(v, f); }},
             {"jammer", [&](auto& v, auto& f) { c.geometry.jammer = as_point(v, f); }},
             {"user_center", [&](auto& v, auto& f) { c.geometry.user_center = as_point(v, f); }},
             {"user_radius_m", [&](auto& v, auto& f) { c.geometry.user_radius_m = as_number(v, f); }},
         }},
        {"algorithm",
         {
             {"epsilon", [&](auto& v, auto& f) { c.algorithm.epsilon = as_number(v, f); }},
             {"t1_max", [&](auto& v, auto& f) { c.algorithm.t1_max = as_int(v, f); }},
             {"t2_max", [&](auto& v, auto& f) { c.algorithm.t2_max = as_int(v, f); }},
             {"trust_radius_m", [&](auto& v, auto& f) { c.algorithm.trust_radius_m = as_number(v, f); }},
             {"paper_faithful", [&](auto& v, auto& f) { c.algorithm.paper_faithful = as_bool(v, f); }},
             {"partial_strategy",
              [&](auto& v, auto& f) {
                  const auto name = as_string(v, f);
                  const auto strategy = parse_partial_strategy(name);
                  if (!strategy)
                      throw ConfigError(f, f + ": unknown strategy '" + name + "' (paper-sca, mrt-equal-power)");
                  c.algorithm.partial_strategy = *strategy;
              }},
             {"monte_carlo_runs", [&](auto& v, auto& f) { c.algorithm.monte_carlo_runs = as_int(v, f); }},
             {"master_seed",
              [&](auto& v, auto& f) {
                  const double s = as_number(v, f);
                  if (s < 0 || std::floor(s) != s || s > 9007199254740992.0)
                      throw ConfigError(f, f + ": expected a non-negative integer below 2^53");
                  c.algorithm.master_seed = static_cast<std::uint64_t>(s);
              }},
         }},
        {"sweep",
         {
             {"powers_w", [&](auto& v, auto& f) { c.sweep.powers_w = as_numbers(v, f); }},
             {"jammer_x_m", [&](auto& v, auto& f) { c.sweep.jammer_x_m = as_numbers(v, f); }},
             {"modes",
              [&](auto& v, auto& f) {
                  if (v.kind != Value::Kind::Array) throw ConfigError(f, f + ": expected an array of mode names");
                  c.sweep.modes.clear();
                  for (const auto& item : v.items) {
                      const auto name = as_string(item, f);
                      const auto mode = parse_jam_mode(name);
                      if (!mode) throw ConfigError(f, f + ": unknown mode '" + name + "'");
                      c.sweep.modes.push_back(*mode);
                  }
              }},
         }},
    };

    for (const auto& [section, table] : doc) {
        const auto sec = schema.find(section);
        if (sec == schema.end()) throw ConfigError(section, "unknown section [" + section + "]");
        for (const auto& [key, value] : table) {
            const std::string field = section + "." + key;
            const auto handler = sec->second.find(key);
            if (handler == sec->second.end()) throw ConfigError(field, "unknown key '" + field + "'");
            handler->second(value, field);
            seen.insert(field);
        }
    }

    // Derived defaults follow lambda and M unless given explicitly.
    if (!seen.count("system.array_half_length_m")) c.array_half_length_m = c.n_jammer_antennas * c.wavelength_m;
    if (!seen.count("system.min_spacing_m")) c.min_spacing_m = 2.0 * c.wavelength_m;
    if (!seen.count("algorithm.trust_radius_m")) c.algorithm.trust_radius_m = c.wavelength_m / 10.0;

    validate(c);
    return c;
}

SystemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.field(), path.string() + ": " + e.what());
    }
}

std::string to_config_text(const SystemConfig& c)
{
    std::ostringstream out;
    out << "[system]\n";
    out << "n_bs_antennas = " << c.n_bs_antennas << "\n";
    out << "n_users = " << c.n_users << "\n";
    out << "n_jammer_antennas = " << c.n_jammer_antennas << "\n";
    out << "wavelength_m = " << format_double(c.wavelength_m) << "\n";
    out << "array_half_length_m = " << format_double(c.array_half_length_m) << "\n";
    out << "min_spacing_m = " << format_double(c.min_spacing_m) << "\n";
    out << "p_bs_w = " << format_double(c.bs_power_w) << "\n";
    out << "p_j_w = " << format_double(c.jammer_power_w) << "\n";
    out << "noise_w = " << format_double(c.noise_power_w) << "\n";
    if (!c.noise_per_user_w.empty()) out << "noise_w_per_user = " << format_array(c.noise_per_user_w) << "\n";
    out << "pathloss_ref_bs = " << format_double(c.pathloss_ref_bs) << "\n";
    out << "pathloss_ref_jam = " << format_double(c.pathloss_ref_jam) << "\n";
    out << "alpha_bs = " << format_double(c.alpha_bs) << "\n";
    out << "alpha_jam = " << format_double(c.alpha_jam) << "\n";
    out << "n_paths = " << c.n_paths << "\n";
    out << "rate_threshold_bps_hz = " << format_double(c.rate_threshold_bps_hz) << "\n";
    out << "precoder = \"" << to_string(c.precoder) << "\"\n";
    out << "random_user_antenna = " << (c.random_user_antenna ? "true" : "false") << "\n";

    const auto& g = c.geometry;
    out << "\n[geometry]\n";
    out << "bs = " << format_array({g.bs.x(), g.bs.y()}) << "\n";
    out << "jammer = " << format_array({g.jammer.x(), g.jammer.y()}) << "\n";
    out << "user_center = " << format_array({g.user_center.x(), g.user_center.y()}) << "\n";
    out << "user_radius_m = " << format_double(g.user_radius_m) << "\n";

    const auto& a = c.algorithm;
    out << "\n[algorithm]\n";
    out << "epsilon = " << format_double(a.epsilon) << "\n";
    out << "t1_max = " << a.t1_max << "\n";
    out << "t2_max = " << a.t2_max << "\n";
    out << "trust_radius_m = " << format_double(a.trust_radius_m) << "\n";
    out << "paper_faithful = " << (a.paper_faithful ? "true" : "false") << "\n";
    out << "partial_strategy = \"" << to_string(a.partial_strategy) << "\"\n";
    out << "monte_carlo_runs = " << a.monte_carlo_runs << "\n";
    out << "master_seed = " << a.master_seed << "\n";

    out << "\n[sweep]\n";
    out << "powers_w = " << format_array(c.sweep.powers_w) << "\n";
    out << "jammer_x_m = " << format_array(c.sweep.jammer_x_m) << "\n";
    out << "modes = [";
    for (std::size_t i = 0; i < c.sweep.modes.size(); ++i)
        out << (i ? ", " : "") << '"' << to_string(c.sweep.modes[i]) << '"';
    out << "]\n";
    return out.str();
}

} // namespace majam
