#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "sloc/radial_seeds.hpp"

namespace sloc::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// A bad parameter combination found after flag parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeedOptions {
    std::string kind = "tri2";  // tri2 | gaussian
    double r0 = 1.0;
    double k0 = -1.0;           // negative selects 4 pi / r0
    double sigma = -1.0;        // negative selects r0 / 8
    double amplitude = 1.0;
    int intervals = kDefaultSeedIntervals;

    double carrier() const;
    double width() const;
};

SeedFunction make_seed(const SeedOptions& o);

struct SeedShowOptions {
    SeedOptions seed;
    int points = 401;
    double r_max = -1.0;  // negative selects 1.25 r0
    std::string out = "-";
};

struct FieldOptions {
    SeedOptions seed;
    int n = 1;
    int points = 801;
    double r_max = -1.0;  // negative selects 2 r0
    std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};  // in units of r0 / c
    std::string prefix = "field";
};

struct FidelityOptions {
    double r0 = 1.0;
    Range k0r0{0.25, 60.0, 40};
    double sigma_over_r0 = 0.125;
    bool analytic = false;
    int threads = 1;
    std::string out = "-";
};

struct BoundsOptions {
    double k0sigma = 20.0;
    double sigma = 1.0;
    Range r0_over_sigma{0.1, 4.0, 80};
    int threads = 1;
    std::string out = "-";
};

struct OracleOptions {
    std::vector<double> gammas{0.05, 0.1, 0.3, 0.6};
    std::vector<double> ns{1, 2, 3};
    double tol = 1e-8;
    double truncation_tol = 1e-12;
    int threads = 1;
};

int cmd_seed_show(const SeedShowOptions& o, std::ostream& os);
// Writes one file per time slice and lists them on `log`.
int cmd_field_profile(const FieldOptions& o, std::ostream& log);
int cmd_fidelity_curve(const FidelityOptions& o, std::ostream& os);
int cmd_bounds_sweep(const BoundsOptions& o, std::ostream& os, std::ostream& warn);
int cmd_oracle_check(const OracleOptions& o, std::ostream& os);

// Mean k weighted by |G k|^2 for the untruncated Gaussian |G|^2 = exp(-(k-k0)^2 s^2).
double gaussian_effective_carrier(double k0, double sigma);

// File name for a field slice at time t (units of r0).
std::string field_file_name(const std::string& prefix, double t_over_r0);

}  // namespace sloc::cli
