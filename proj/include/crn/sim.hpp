#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {
namespace sim {

struct NonNegativityBreach : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compiled double-precision right-hand side of the mass-action system.
class Rhs {
public:
    Rhs(const ReactionNetwork& net, Eigen::VectorXd kappa);

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
    Eigen::Index dimension() const { return n_; }

private:
    struct Term {
        double kappa;
        std::vector<std::pair<int, int>> factors;  // (species, exponent)
        std::vector<std::pair<int, double>> outputs;  // (species, stoichiometry)
    };
    Eigen::Index n_;
    std::vector<Term> terms_;
};

struct Trajectory {
    Eigen::VectorXd times;
    Eigen::MatrixXd states;  // one row per time, one column per species
    double step = 0;
    std::string method = "rk4";
};

/// Fixed-step RK4. States are clipped at zero when the undershoot is below
/// 1e-12, otherwise NonNegativityBreach is thrown.
Trajectory integrate(const ReactionNetwork& net, const Eigen::VectorXd& kappa,
                     const Eigen::VectorXd& x0, double t_end, double step);

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& species);

struct PerturbationCurve {
    Eigen::VectorXd base;       // kappa-hat
    Eigen::VectorXd direction;  // rho; kappa(eps) = base + eps * rho
};

struct ReductionRow {
    double eps = 0;
    double max_scaled = 0;       // max over the window of the scaled variables
    double distance = 0;         // distance to the critical set of the base system
};

struct ReductionTable {
    std::vector<ReductionRow> rows;
    std::vector<double> empirical_orders;  // log-ratios of consecutive rows
    std::string metric;  // which column the orders refer to
};

/// eps-sweep of the reduction error. In curve mode the rates move along
/// kappa(eps) with x0 fixed; with scaled_species given, the initial values
/// of those species are multiplied by eps instead (LTC mode) and the rates
/// stay at the base. The transient skip is the first 20% of the window.
ReductionTable reduction_error(const ReactionNetwork& net, const PerturbationCurve& curve,
                               const std::vector<int>& scaled_species,
                               const std::vector<double>& eps_list, const Eigen::VectorXd& x0,
                               double t_window, double step);

struct AttractivitySample {
    Eigen::VectorXd start;
    bool converged = false;
    double fitted_rate = 0;
};

struct AttractivityResult {
    double fraction = 0;     // share of converging samples
    double fitted_rate = 0;  // median fitted decay rate of converging samples
    std::vector<AttractivitySample> samples;
};

/// Integrates from random non-negative perturbations of a stationary point
/// and reports the convergent fraction plus fitted exponential decay rates
/// of |rhs| along the trajectories.
AttractivityResult attractivity_probe(const ReactionNetwork& net, const Eigen::VectorXd& kappa,
                                      const Eigen::VectorXd& z_point, double radius, int samples,
                                      double t_end, double step, std::uint64_t seed);

}  // namespace sim
}  // namespace crn
