#ifndef DIMER_CONFIG_HPP
#define DIMER_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/feasibility.hpp"

namespace dimer::config {

/// Schema or syntax problem in a job config; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelBlock {
    int N = 10;
    double U = -1.0;          // default 1/N, so NU = 1
    double J_max = 1.1;       // in NU units when U defaulted
    double Delta_max = -1.0;  // default U/2
};

struct ScheduleBlock {
    std::string mode = "constant";  // constant | adaptive
    double dot_J = 1e-4;
    double dot_Delta = 1e-4;
    double lambda = 0.1;
    double dt = 0.1;
    int snapshot_stride = 200;
    double J_floor = 1e-4;  // fraction of NU
    double phi = 0.0;       // encoded phase per particle
    bool phi_total_set = false;
    double phi_total = 0.0;  // N*phi alternative; wins when set
};

struct ScanBlock {
    bool present = false;
    std::string variable;  // phi | N_phi | dot_J | lambda | Delta | Delta_over_U | J | N
    double from = 0.0, to = 0.0;
    int steps = 0;
    std::vector<double> values;  // explicit grid; wins over from/to/steps

    std::vector<double> grid() const;
};

struct EnsembleBlock {
    int points = 10000;
    long M = 0;  // synthetic measurement count; 0 keeps exact distributions
    std::uint64_t seed = 1;
};

struct OutputBlock {
    bool csv = true;
    bool json = true;
};

struct HusimiBlock {
    int n_theta = 96;
    int n_phi = 192;
    std::string source = "cat";  // coherent | cat | quench | protocol
    double theta = M_PI / 2.0;
    double phi = 0.0;
    double cat_phase = 0.0;   // total relative phase N*varphi
    double rotate = 0.0;      // rotate_y angle applied to the state
    double duration = -1.0;   // quench source; < 0 means pi/omega_x
};

struct QuenchBlock {
    double duration = -1.0;  // < 0 means pi/omega_x
    int samples = 64;
};

struct FeasibilityBlock {
    dimer::feasibility::TrapSpec spec = dimer::feasibility::potassium39_example();
    double lambda = 0.1;
    double C_split = 0.07;
    double C_branch = 0.02;
};

struct JobConfig {
    std::string subcommand;
    ModelBlock model;
    ScheduleBlock schedule;
    ScanBlock scan;
    EnsembleBlock ensemble;
    OutputBlock output;
    HusimiBlock husimi;
    QuenchBlock quench;
    FeasibilityBlock feasibility;

    std::string out_dir = ".";
    int threads = 0;  // 0 = library default

    /// Resolved physical values.
    double resolved_U() const { return model.U > 0.0 ? model.U : 1.0 / model.N; }
    double resolved_Delta_max() const {
        return model.Delta_max >= 0.0 ? model.Delta_max : 0.5 * resolved_U();
    }
    double resolved_phi() const {
        return schedule.phi_total_set ? schedule.phi_total / model.N : schedule.phi;
    }

    void validate() const;  // cross-field checks; throws ConfigError
};

/// Parse the block-structured key-value text. Reports unknown blocks/keys
/// with the line number and a closest-match suggestion.
JobConfig parse_config(const std::string& text);
JobConfig parse_config_file(const std::string& path);

}  // namespace dimer::config

#endif
