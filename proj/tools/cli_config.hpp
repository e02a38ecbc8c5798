#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttcli {

struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    bool operator==(const AxisSpec&) const = default;
};

struct RunConfig {
    std::string command;  // measure, evolve, channel, figure, sweep, validate-oracles
    std::string state;
    std::string channel;
    std::string place = "all";
    double J = 1.0;
    double Delta = 0.0;
    double D = 0.0;
    double B = 0.0;
    bool milburn = false;
    std::optional<double> gamma;
    std::map<std::string, double> params;  // a, d, p, b, tau, theta, w, w1, w2
    std::string scenario;
    std::vector<AxisSpec> grid;
    std::optional<double> tmax;
    int steps = 200;
    std::string figure;
    std::string out;
    std::string mform = "standard";

    bool operator==(const RunConfig&) const = default;
};

// bad flag or config value; `where` names the flag or "file:line"
class UsageError : public std::runtime_error {
public:
    UsageError(std::string where, const std::string& msg) : std::runtime_error(msg), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

// --help / --version; text is what to print
struct HelpRequested {
    std::string text;
};

const std::vector<std::string>& commands();
const std::vector<std::string>& scenario_param_names();

// throws UsageError naming the offending flag
void validate_config(const RunConfig& c);

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

// argv[0] is the program name
RunConfig parse_args(int argc, const char* const* argv);

}  // namespace ttcli
