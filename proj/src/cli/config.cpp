#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "exciton/cli.hpp"
#include "exciton/errors.hpp"

namespace exciton::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view csv)
{
    std::vector<std::string> items;
    std::stringstream ss{std::string(csv)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

} // namespace

void SweepConfig::validate() const
{
    if (!(tol > 0.0)) {
        throw UsageError("--tol must be positive");
    }
    if (single_r) {
        if (!(*single_r > 0.0) || !std::isfinite(*single_r)) {
            throw UsageError("--r must be positive");
        }
        return;
    }
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
        throw UsageError("sweep needs 0 < r-min < r-max");
    }
    if (n_points < 2) {
        throw UsageError("sweep needs --points >= 2");
    }
}

std::vector<double> SweepConfig::radii() const
{
    if (single_r) {
        return {*single_r};
    }
    std::vector<double> r(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / (n_points - 1);
        r[i] = spacing == Spacing::log ? std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min)))
                                       : r_min + t * (r_max - r_min);
    }
    r.front() = r_min;
    r.back() = r_max;
    return r;
}

bool SweepConfig::uses(Engine e) const
{
    return std::find(engines.begin(), engines.end(), e) != engines.end();
}

std::vector<coulomb::StateLabel> SweepConfig::resolved_states() const
{
    if (!states.empty()) {
        return states;
    }
    using coulomb::Parity;
    using coulomb::StateLabel;
    return {StateLabel::make(1, Parity::even), StateLabel::make(2, Parity::odd), StateLabel::make(2, Parity::even),
            StateLabel::make(3, Parity::odd)};
}

std::vector<coulomb::StateLabel> parse_states(std::string_view csv)
{
    std::vector<coulomb::StateLabel> out;
    for (const auto& item : split_list(csv)) {
        try {
            out.push_back(coulomb::StateLabel::parse(item));
        } catch (const DomainError& e) {
            throw UsageError("--states: " + std::string(e.what()));
        }
    }
    if (out.empty()) {
        throw UsageError("--states: empty list");
    }
    return out;
}

std::vector<Engine> parse_engines(std::string_view csv)
{
    std::vector<Engine> out;
    for (const auto& item : split_list(csv)) {
        if (item == "coulomb") {
            out.push_back(Engine::coulomb);
        } else if (item == "variational") {
            out.push_back(Engine::variational);
        } else if (item == "oracle") {
            out.push_back(Engine::oracle);
        } else {
            throw UsageError("--engines: unknown engine '" + item + "' (coulomb, variational, oracle)");
        }
    }
    if (out.empty()) {
        throw UsageError("--engines: empty list");
    }
    return out;
}

std::string_view engine_name(Engine e)
{
    switch (e) {
    case Engine::coulomb:
        return "coulomb";
    case Engine::variational:
        return "variational";
    case Engine::oracle:
        return "oracle";
    }
    return "?";
}

std::map<std::string, std::string> read_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::map<std::string, std::string> values;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(number) + ": expected key=value");
        }
        auto key = trim(std::string_view(line).substr(0, eq));
        auto value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            throw UsageError(path.string() + ":" + std::to_string(number) + ": empty key");
        }
        values[key] = value;
    }
    return values;
}

} // namespace exciton::cli
