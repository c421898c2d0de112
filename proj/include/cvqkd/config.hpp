#pragma once

#include "cvqkd/pipeline.hpp"

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>

namespace cvqkd {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Flat `key = value` text, one pair per line; `#` starts a comment.
///
/// Keys: r1, r2, attack (none | intercept_resend | cloner), chi, g, rounds,
/// disclose_fraction, quantizer_n, seed, security_margin, confidence_z.
/// A cloner attack needs chi; g defaults to 1. Unknown or repeated keys and
/// unparsable values are errors.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::string& path);

}  // namespace cvqkd
