#include "crn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace crn {
namespace sim {

Rhs::Rhs(const ReactionNetwork& net, Eigen::VectorXd kappa) : n_(net.species_count()) {
    if (kappa.size() != net.reaction_count())
        throw std::invalid_argument("Rhs: rate vector length mismatch");
    const auto mats = build_matrices(net);
    for (Index j = 0; j < net.reaction_count(); ++j) {
        if (kappa(j) == 0.0) continue;
        Term t;
        t.kappa = kappa(j);
        for (Index l = 0; l < n_; ++l)
            if (mats.B(l, j) > 0) t.factors.emplace_back(static_cast<int>(l), mats.B(l, j));
        for (Index i = 0; i < n_; ++i)
            if (mats.N(i, j) != 0)
                t.outputs.emplace_back(static_cast<int>(i), static_cast<double>(mats.N(i, j)));
        terms_.push_back(std::move(t));
    }
}

Eigen::VectorXd Rhs::operator()(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
    for (const auto& t : terms_) {
        double rate = t.kappa;
        for (const auto& [l, e] : t.factors)
            for (int p = 0; p < e; ++p) rate *= x(l);
        if (rate == 0.0) continue;
        for (const auto& [i, c] : t.outputs) out(i) += c * rate;
    }
    return out;
}

namespace {

constexpr double kClipTolerance = 1e-12;

void enforce_nonnegativity(Eigen::VectorXd& x, double t) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x(i))) {
            std::ostringstream os;
            os << "non-finite state component " << i << " at t = " << t;
            throw NonFinite(os.str());
        }
        if (x(i) < 0) {
            if (x(i) < -kClipTolerance) {
                std::ostringstream os;
                os << "state component " << i << " fell to " << x(i) << " at t = " << t;
                throw NonNegativityBreach(os.str());
            }
            x(i) = 0;
        }
    }
}

}  // namespace

Trajectory integrate(const ReactionNetwork& net, const Eigen::VectorXd& kappa,
                     const Eigen::VectorXd& x0, double t_end, double step) {
    if (step <= 0) throw std::invalid_argument("integrate: step must be positive");
    if ((x0.array() < 0).any()) throw std::invalid_argument("integrate: x0 must be non-negative");
    const Rhs f(net, kappa);
    const auto n_steps = static_cast<Eigen::Index>(std::ceil(t_end / step - 1e-12));

    Trajectory traj;
    traj.step = step;
    traj.times.resize(n_steps + 1);
    traj.states.resize(n_steps + 1, x0.size());

    Eigen::VectorXd x = x0;
    traj.times(0) = 0;
    traj.states.row(0) = x.transpose();
    for (Eigen::Index s = 1; s <= n_steps; ++s) {
        const double h = step;
        const Eigen::VectorXd k1 = f(x);
        const Eigen::VectorXd k2 = f(x + 0.5 * h * k1);
        const Eigen::VectorXd k3 = f(x + 0.5 * h * k2);
        const Eigen::VectorXd k4 = f(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        enforce_nonnegativity(x, static_cast<double>(s) * h);
        traj.times(s) = static_cast<double>(s) * h;
        traj.states.row(s) = x.transpose();
    }
    return traj;
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& species) {
    std::ostringstream os;
    os.precision(17);
    os << "t";
    for (const auto& s : species) os << "," << s;
    os << "\n";
    for (Eigen::Index r = 0; r < traj.times.size(); ++r) {
        os << traj.times(r);
        for (Eigen::Index c = 0; c < traj.states.cols(); ++c) os << "," << traj.states(r, c);
        os << "\n";
    }
    return os.str();
}

ReductionTable reduction_error(const ReactionNetwork& net, const PerturbationCurve& curve,
                               const std::vector<int>& scaled_species,
                               const std::vector<double>& eps_list, const Eigen::VectorXd& x0,
                               double t_window, double step) {
    for (size_t i = 0; i < eps_list.size(); ++i) {
        if (eps_list[i] <= 0)
            throw std::invalid_argument("reduction_error: eps values must be positive");
        if (i > 0 && eps_list[i] >= eps_list[i - 1])
            throw std::invalid_argument("reduction_error: eps list must be decreasing");
    }
    ReductionTable table;
    const Rhs base_rhs(net, curve.base);
    const bool ltc_mode = !scaled_species.empty();
    table.metric = ltc_mode ? "max_scaled" : "distance";

    for (double eps : eps_list) {
        Eigen::VectorXd kappa = curve.base + eps * curve.direction;
        Eigen::VectorXd start = x0;
        if (ltc_mode)
            for (int i : scaled_species) start(i) *= eps;
        const Trajectory traj = integrate(net, kappa, start, t_window, step);

        // Transient skip: first 20% of the window.
        const Eigen::Index first = traj.times.size() / 5;
        ReductionRow row;
        row.eps = eps;
        for (Eigen::Index r = first; r < traj.times.size(); ++r) {
            const Eigen::VectorXd x = traj.states.row(r).transpose();
            row.distance = std::max(row.distance, base_rhs(x).cwiseAbs().maxCoeff());
            for (int i : scaled_species) row.max_scaled = std::max(row.max_scaled, x(i));
        }
        table.rows.push_back(row);
    }

    for (size_t r = 0; r + 1 < table.rows.size(); ++r) {
        const double e0 = ltc_mode ? table.rows[r].max_scaled : table.rows[r].distance;
        const double e1 = ltc_mode ? table.rows[r + 1].max_scaled : table.rows[r + 1].distance;
        const double h0 = table.rows[r].eps;
        const double h1 = table.rows[r + 1].eps;
        table.empirical_orders.push_back(std::log(e0 / e1) / std::log(h0 / h1));
    }
    return table;
}

namespace {

/// Least-squares slope of log(d) against t over the clean decay window.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& dist) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < times.size(); ++i) {
        if (dist[i] > 1e-11 && dist[i] < 1e-2) pts.emplace_back(times[i], std::log(dist[i]));
    }
    if (pts.size() < 4) return 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0) return 0;
    return -(m * sxy - sx * sy) / denom;
}

}  // namespace

AttractivityResult attractivity_probe(const ReactionNetwork& net, const Eigen::VectorXd& kappa,
                                      const Eigen::VectorXd& z_point, double radius, int samples,
                                      double t_end, double step, std::uint64_t seed) {
    AttractivityResult out;
    const Rhs f(net, kappa);
    if (f(z_point).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("attractivity_probe: Z_point is not stationary");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::vector<double> rates;
    int converged = 0;
    for (int s = 0; s < samples; ++s) {
        AttractivitySample sample;
        sample.start = z_point;
        for (Eigen::Index i = 0; i < z_point.size(); ++i)
            sample.start(i) = std::max(0.0, z_point(i) + radius * unit(rng));

        Trajectory traj;
        try {
            traj = integrate(net, kappa, sample.start, t_end, step);
        } catch (const std::runtime_error&) {
            out.samples.push_back(std::move(sample));
            continue;
        }

        std::vector<double> times, dist;
        const Eigen::Index stride =
            std::max<Eigen::Index>(1, traj.times.size() / 2000);
        for (Eigen::Index r = 0; r < traj.times.size(); r += stride) {
            times.push_back(traj.times(r));
            dist.push_back(f(traj.states.row(r).transpose()).cwiseAbs().maxCoeff());
        }
        const double final_dist = f(traj.states.row(traj.states.rows() - 1).transpose())
                                      .cwiseAbs()
                                      .maxCoeff();
        const double initial_dist = dist.empty() ? 0 : dist.front();
        const Eigen::VectorXd drift =
            (traj.states.row(traj.states.rows() - 1) -
             traj.states.row(traj.states.rows() - 1 - std::min<Eigen::Index>(
                                                          traj.states.rows() - 1,
                                                          static_cast<Eigen::Index>(1.0 / step))))
                .transpose();
        // Escaping trajectories settle on boundary stationary sets where
        // |rhs| vanishes as well; bounding the total displacement by the
        // perturbation size separates the two outcomes.
        const double displacement =
            (traj.states.row(traj.states.rows() - 1).transpose() - sample.start)
                .cwiseAbs()
                .maxCoeff();
        sample.converged = final_dist < std::max(1e-8, 1e-6 * std::max(initial_dist, 1.0)) &&
                           drift.cwiseAbs().maxCoeff() < 1e-6 &&
                           displacement <= std::max(10.0 * radius, 1e-6);
        if (sample.converged) {
            ++converged;
            sample.fitted_rate = fit_decay_rate(times, dist);
            if (sample.fitted_rate > 0) rates.push_back(sample.fitted_rate);
        }
        out.samples.push_back(std::move(sample));
    }

    out.fraction = samples == 0 ? 1.0 : static_cast<double>(converged) / samples;
    if (samples == 0) out.fraction = 1.0;
    if (!rates.empty()) {
        std::sort(rates.begin(), rates.end());
        out.fitted_rate = rates[rates.size() / 2];
    }
    return out;
}

}  // namespace sim
}  // namespace crn
