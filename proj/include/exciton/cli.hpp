#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "exciton/coulomb.hpp"
#include "exciton/quadrature.hpp"

namespace exciton::cli {

inline constexpr std::string_view kVersion = "0.1.0";
/// Effective Bohr radius for epsilon = mu = 1, in angstrom.
inline constexpr double kBohrAngstrom = 0.529;

enum ExitCode : int { ok = 0, usage = 2, no_convergence = 3, io = 4 };

class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct PhysicalParams {
    double epsilon = 1.0; ///< dielectric constant
    double mu = 1.0;      ///< reduced mass, bare electron masses
};

/// r / (0.529 A * epsilon / mu). Throws UsageError on non-positive input.
Radius convert_radius(double r_angstrom, const PhysicalParams& phys);
/// "r ≈ 0.1 a_B*" when the radius sits in the typical-nanotube window.
std::optional<std::string> radius_note(Radius r);

enum class Spacing { linear, log };
enum class Engine { coulomb, variational, oracle };

struct SweepConfig {
    double r_min = 1e-3;
    double r_max = 1.0;
    int n_points = 60;
    Spacing spacing = Spacing::log;
    std::vector<coulomb::StateLabel> states;
    std::vector<Engine> engines = {Engine::coulomb, Engine::variational};
    /// Replaces the range by one radius when set.
    std::optional<double> single_r;
    double tol = 1e-13;

    /// Throws UsageError unless 0 < r_min < r_max and n_points >= 2.
    void validate() const;
    [[nodiscard]] std::vector<double> radii() const;
    [[nodiscard]] bool uses(Engine e) const;
    /// states, or 1s, 2p, 2s, 3p when empty.
    [[nodiscard]] std::vector<coulomb::StateLabel> resolved_states() const;
};

std::vector<coulomb::StateLabel> parse_states(std::string_view csv);
std::vector<Engine> parse_engines(std::string_view csv);
std::string_view engine_name(Engine e);

/// Flat key=value file; '#' starts a comment. Throws IoError / UsageError.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Non-fatal problems (unconverged rows); not part of the CSV.
    std::vector<std::string> warnings;
};

/// 12 significant digits; throws AccuracyError for NaN or Inf.
std::string format_number(double v);
/// `# metadata` line, header row, one line per row, '\n' endings.
void write_csv(std::ostream& out, std::string_view metadata, const Table& table);

Table cmd_potential(Radius r, double x_min, double x_max, int n);
Table cmd_spectrum(const SweepConfig& sweep);
/// Keys r, state, k, q, energy, K, V, N, iterations, converged.
nlohmann::ordered_json cmd_variational(Radius r, coulomb::StateLabel state, const QuadratureSpec& quad);
Table cmd_compare(const SweepConfig& sweep, const QuadratureSpec& quad);

/// Entry point behind the executable; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace exciton::cli
