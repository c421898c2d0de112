#include "cvqkd/cli.hpp"

#include "cvqkd/config.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/infotheory.hpp"
#include "cvqkd/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace cvqkd {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, comma - start);
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size()) {
                throw UsageError(fmt::format("invalid {} value '{}'", what, item));
            }
            values.push_back(v);
        }
        start = comma + 1;
    }
    return values;
}

// Opens `path` for writing, or returns `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open " + path + " for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_params(double r1, double r2, std::ostream& out) {
    const ProtocolParams p = derive_params(r1, r2);
    const auto row = [&](const char* name, double v) { fmt::print(out, "{:<16}{:.15g}\n", name, v); };
    row("sigma1^2", p.squeezed_var1);
    row("sigma2^2", p.squeezed_var2);
    row("Sigma1^2", p.key_var1);
    row("Sigma2^2", p.key_var2);
    row("alpha", p.alpha);
    row("gamma", p.snr);
    row("I0_bits", p.i0_bits);
    if (p.symmetric()) {
        row("mean_photons", mean_photon_number(p));
    } else {
        fmt::print(out, "{:<16}{}\n", "mean_photons", "n/a (asymmetric squeezing)");
    }
    row("snr_threshold", snr_security_threshold(p.snr));
    return kExitOk;
}

void print_report_table(std::ostream& err, const InfoReport& a, const InfoReport& e) {
    fmt::print(err, "{:<22}{:>14}{:>14}\n", "", "analytic", "empirical");
    const auto row = [&](const char* name, double x, double y) {
        fmt::print(err, "{:<22}{:>14.6f}{:>14.6f}\n", name, x, y);
    };
    row("I0 (bits)", a.i0_bits, e.i0_bits);
    row("I_bob (bits)", a.i_bob_bits, e.i_bob_bits);
    row("I_eve (bits)", a.i_eve_bits, e.i_eve_bits);
    row("key rate bound", a.key_rate_bound_bits, e.key_rate_bound_bits);
    fmt::print(err, "{:<22}{:>14}{:>14}\n", "secure", a.secure ? "yes" : "no", e.secure ? "yes" : "no");
}

void print_estimate(std::ostream& err, const char* name, const DisturbanceEstimate& d) {
    fmt::print(err, "{}: n={} noise variance={:.6f} [{:.6f}, {:.6f}] snr={:.4f} snr_lower={:.4f}{}\n", name,
               d.samples, d.noise_variance, d.noise_variance_lower, d.noise_variance_upper, d.snr,
               d.snr_lower(), d.suspicious ? " SUSPICIOUS" : "");
}

std::string describe_attack(const AttackModel& attack) {
    if (const auto* c = std::get_if<Cloner>(&attack)) {
        return fmt::format("cloner chi={} g={}", c->chi, c->g);
    }
    return std::string(attack_name(attack));
}

int cmd_simulate(const std::string& config_path, const std::string& csv_path,
                 const std::string& transcript_path, const std::string& key_path, std::ostream& out,
                 std::ostream& err) {
    PipelineConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        fmt::print(err, "error: {}: {}\n", config_path, e.what());
        return kExitUsage;
    }
    std::optional<std::uint64_t> seed_override;
    if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
        std::uint64_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            fmt::print(err, "error: {}='{}' is not an unsigned integer\n", kSeedEnvVar, s);
            return kExitUsage;
        }
        seed_override = v;
        cfg.seed = v;
    }

    PipelineResult r;
    try {
        r = run_pipeline(cfg);
    } catch (const InsufficientData& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }

    {
        Sink csv(csv_path, out);
        std::string buf = "round,basis_sent,x,basis_bob,y,sifted,disclosed\n";
        auto it = std::back_inserter(buf);
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            const TransmissionRecord& rec = r.records[i];
            fmt::format_to(it, "{},{},{},{},{},{},{}\n", i, basis_number(rec.sent_basis), rec.x,
                           basis_number(rec.bob_basis), rec.y, rec.matched() ? 1 : 0, int{r.disclosed[i]});
        }
        csv.get() << buf;
        csv.get().flush();
    }
    if (!transcript_path.empty()) {
        Sink t(transcript_path, out);
        const std::vector<std::uint8_t> bytes = r.key.transcript.serialize();
        t.get().write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }

    const ProtocolParams& p = r.params;
    fmt::print(err, "config: {}\n", config_path);
    if (seed_override) {
        fmt::print(err, "seed: {} (overridden by {})\n", cfg.seed, kSeedEnvVar);
    } else {
        fmt::print(err, "seed: {}\n", cfg.seed);
    }
    fmt::print(err, "params: r1={} r2={} alpha={:.6f} gamma={:.6f} I0={:.6f} bits\n", p.r1, p.r2, p.alpha, p.snr,
               p.i0_bits);
    fmt::print(err, "attack: {}\n", describe_attack(cfg.attack));
    fmt::print(err, "rounds: {} sifted: {} key symbols: {}\n", r.records.size(), r.sifted_rounds, r.key.symbols);
    print_estimate(err, "basis 1", *r.basis1);
    print_estimate(err, "basis 2", *r.basis2);
    fmt::print(err, "snr threshold: {:.6f}\n", r.snr_threshold);
    print_report_table(err, r.analytic, r.empirical);

    const std::size_t key_bits = r.ok() ? r.key.final_key.size() : 0;
    if (r.key.symbols > 0) {
        fmt::print(err, "symbol entropy: {:.4f} bits, leakage: {} bits ({:.4f} per symbol)\n",
                   r.key.alice_entropy_bits, r.key.leakage_bits,
                   static_cast<double>(r.key.leakage_bits) / static_cast<double>(r.key.symbols));
        fmt::print(err, "eve estimate: {:.6f} bits/symbol, bob estimate: {:.6f} bits/symbol\n",
                   r.key.eve_info_estimate, r.key.i_bob_measured_bits);
    }
    if (r.ok()) {
        fmt::print(err, "final key: {} bits ({:.6f} per symbol)\n", key_bits,
                   static_cast<double>(key_bits) / static_cast<double>(r.key.symbols));
        const std::string hex = r.key.final_key.to_hex();
        fmt::print(err, "key={}\n", hex);
        if (!key_path.empty()) {
            Sink k(key_path, out);
            k.get() << hex << '\n';
        }
    } else {
        fmt::print(err, "abort: {}\n", r.abort_reason);
    }
    fmt::print(err, "RESULT status={} key_bits={}\n", r.ok() ? "ok" : "abort", key_bits);
    return r.ok() ? kExitOk : kExitAbort;
}

int cmd_sweep(const std::string& config_path, const std::string& chi_list, const std::string& g_list, int basis,
              const std::string& csv_path, std::ostream& out, std::ostream& err) {
    PipelineConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        fmt::print(err, "error: {}: {}\n", config_path, e.what());
        return kExitUsage;
    }
    const std::vector<double> chis = parse_list(chi_list, "chi");
    const std::vector<double> gs = parse_list(g_list, "g");
    if (chis.empty() || gs.empty()) throw UsageError("empty sweep grid");
    const QuadratureBasis key_basis = basis == 1 ? QuadratureBasis::X1 : QuadratureBasis::X2;
    const ProtocolParams p = derive_params(cfg.r1, cfg.r2);

    std::string buf = "chi,g,i_bob_bits,i_eve_bits,key_rate_bits\n";
    auto it = std::back_inserter(buf);
    for (double chi : chis) {
        for (double g : gs) {
            const InfoReport rep = analytic_report(p, Cloner{chi, g}, key_basis);
            fmt::format_to(it, "{},{},{},{},{}\n", chi, g, rep.i_bob_bits, rep.i_eve_bits, rep.key_rate_bound_bits);
        }
    }
    Sink csv(csv_path, out);
    csv.get() << buf;
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Squeezed-state continuous-variable QKD simulator", "cvqkd"};
    app.require_subcommand(1);

    double r1 = 0.0;
    double r2 = 0.0;
    auto* params = app.add_subcommand("params", "Print the protocol parameters for given squeeze factors");
    params->add_option("--r1", r1, "Squeeze factor of basis 1")->required();
    params->add_option("--r2", r2, "Squeeze factor of basis 2")->required();

    std::string config_path;
    std::string csv_path;
    std::string transcript_path;
    std::string key_path;
    auto* simulate = app.add_subcommand("simulate", "Run the full protocol on a scenario config");
    simulate->add_option("config", config_path, "Scenario config file")->required();
    simulate->add_option("--out", csv_path, "Per-round CSV path (default stdout)");
    simulate->add_option("--transcript", transcript_path, "Write the reconciliation transcript here");
    simulate->add_option("--key-out", key_path, "Write the final key as hex here");

    std::string chi_list;
    std::string g_list = "1";
    int basis = 1;
    auto* sweep = app.add_subcommand("sweep", "Analytic information rates over a cloner grid");
    sweep->add_option("config", config_path, "Scenario config file (squeeze factors)")->required();
    sweep->add_option("--chi", chi_list, "Comma-separated chi values")->required();
    sweep->add_option("--g", g_list, "Comma-separated g values");
    sweep->add_option("--basis", basis, "Bob's key basis; Eve is scored in the other")
        ->check(CLI::IsMember({1, 2}));
    sweep->add_option("--out", csv_path, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*params) return cmd_params(r1, r2, out);
        if (*simulate) return cmd_simulate(config_path, csv_path, transcript_path, key_path, out, err);
        return cmd_sweep(config_path, chi_list, g_list, basis, csv_path, out, err);
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
    } catch (const std::domain_error& e) {
        fmt::print(err, "error: {}\n", e.what());
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
    }
    return kExitUsage;
}

}  // namespace cvqkd
