#include "cvqkd/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>

namespace cvqkd {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(line, "invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
    PipelineConfig cfg;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::optional<std::string> attack;
    std::size_t attack_line = 0;
    std::optional<double> chi;
    double g = 1.0;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line, "expected key = value");
        const std::string key(trim(text.substr(0, eq)));
        const std::string_view value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key");
        if (value.empty()) throw ConfigError(line, "missing value for " + key);
        if (!seen.emplace(key, line).second) throw ConfigError(line, "duplicate key " + key);

        if (key == "r1") {
            cfg.r1 = parse_number<double>(value, line, key);
        } else if (key == "r2") {
            cfg.r2 = parse_number<double>(value, line, key);
        } else if (key == "attack") {
            attack = std::string(value);
            attack_line = line;
        } else if (key == "chi") {
            chi = parse_number<double>(value, line, key);
        } else if (key == "g") {
            g = parse_number<double>(value, line, key);
        } else if (key == "rounds") {
            cfg.rounds = parse_number<std::size_t>(value, line, key);
        } else if (key == "disclose_fraction") {
            cfg.disclose_fraction = parse_number<double>(value, line, key);
        } else if (key == "quantizer_n") {
            cfg.quantizer_n = parse_number<int>(value, line, key);
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(value, line, key);
        } else if (key == "security_margin") {
            cfg.security_margin = parse_number<std::uint64_t>(value, line, key);
        } else if (key == "confidence_z") {
            cfg.confidence_z = parse_number<double>(value, line, key);
        } else {
            throw ConfigError(line, "unknown key " + key);
        }
    }

    if (!attack || *attack == "none") {
        cfg.attack = NoAttack{};
    } else if (*attack == "intercept_resend") {
        cfg.attack = InterceptResend{};
    } else if (*attack == "cloner") {
        if (!chi) throw ConfigError(attack_line, "attack = cloner requires chi");
        cfg.attack = Cloner{*chi, g};
    } else {
        throw ConfigError(attack_line, "unknown attack '" + *attack + "'");
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file " + path);
    return parse_config(in);
}

}  // namespace cvqkd
