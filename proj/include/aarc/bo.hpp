#pragma once

// Bayesian-optimization baseline over the decoupled discretized grid:
// memory in 64 MB increments from 128 to 10240 MB, vCPU from 0.1 to 10.0
// in 0.1 steps, jointly across all nodes (2 x |nodes| dimensions). A fixed
// squared-exponential GP with expected-improvement acquisition over a
// seeded random candidate set; SLO violations are handled by an additive
// cost penalty. Fully deterministic for a fixed seed.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aarc/configurator.hpp"
#include "aarc/cost.hpp"
#include "aarc/perf.hpp"
#include "aarc/rng.hpp"
#include "aarc/trace.hpp"
#include "aarc/workflow.hpp"

namespace aarc {

struct BoParams {
    int budget = 100;
    int init_random = 10;
    int candidates_per_round = 1000;
    double lengthscale = 0.2;        // per dimension, normalized coordinates
    double noise_variance = 1e-4;    // relative to observed cost variance
    double slo_penalty = 1e6;        // added to infeasible samples
};

inline constexpr int kBoMemSteps = (kMemMax - kMemMin) / 64 + 1;  // 159
inline constexpr int kBoCpuSteps = 100;

inline int bo_mem_value(int idx) { return kMemMin + 64 * idx; }
inline double bo_cpu_value(int idx) { return static_cast<double>(idx + 1) / 10.0; }

struct BoResult {
    ConfigMap configs;
    TraceLog trace;
};

namespace detail {

// Dense Cholesky solve for the small GP systems used here (n <= budget).
class GaussianProcess {
public:
    // X: n rows of d normalized coordinates; y: objective values.
    GaussianProcess(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                    double lengthscale, double noise_variance)
        : X_(X), lengthscale_(lengthscale) {
        n_ = X.size();
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n_);
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n_);
        y_mean_ = mean;
        y_scale_ = var > 0.0 ? std::sqrt(var) : 1.0;
        yn_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) yn_[i] = (y[i] - y_mean_) / y_scale_;

        L_.assign(n_ * n_, 0.0);
        std::vector<double> K(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double k = kernel(X_[i], X_[j]);
                if (i == j) k += noise_variance;
                K[i * n_ + j] = K[j * n_ + i] = k;
            }
        cholesky(K);
        alpha_ = solve(yn_);
    }

    // Posterior mean and std in normalized-y units.
    void predict(const std::vector<double>& x, double& mu, double& sigma) const {
        std::vector<double> k(n_);
        for (std::size_t i = 0; i < n_; ++i) k[i] = kernel(X_[i], x);
        mu = 0.0;
        for (std::size_t i = 0; i < n_; ++i) mu += k[i] * alpha_[i];
        std::vector<double> v = forward(k);
        double var = 1.0;
        for (double vi : v) var -= vi * vi;
        sigma = std::sqrt(std::max(var, 1e-12));
    }

    double best_observed() const {
        double best = yn_[0];
        for (double v : yn_) best = std::min(best, v);
        return best;
    }

private:
    double kernel(const std::vector<double>& a, const std::vector<double>& b) const {
        double s = 0.0;
        for (std::size_t d = 0; d < a.size(); ++d) {
            double u = (a[d] - b[d]) / lengthscale_;
            s += u * u;
        }
        return std::exp(-0.5 * s);
    }

    void cholesky(std::vector<double>& K) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = K[i * n_ + j];
                for (std::size_t k = 0; k < j; ++k) s -= L_[i * n_ + k] * L_[j * n_ + k];
                if (i == j)
                    L_[i * n_ + i] = std::sqrt(std::max(s, 1e-12));
                else
                    L_[i * n_ + j] = s / L_[j * n_ + j];
            }
        }
    }

    std::vector<double> forward(const std::vector<double>& b) const {
        std::vector<double> v(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = b[i];
            for (std::size_t k = 0; k < i; ++k) s -= L_[i * n_ + k] * v[k];
            v[i] = s / L_[i * n_ + i];
        }
        return v;
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> v = forward(b);
        std::vector<double> x(n_);
        for (std::size_t ii = n_; ii-- > 0;) {
            double s = v[ii];
            for (std::size_t k = ii + 1; k < n_; ++k) s -= L_[k * n_ + ii] * x[k];
            x[ii] = s / L_[ii * n_ + ii];
        }
        return x;
    }

    std::vector<std::vector<double>> X_;
    std::vector<double> yn_, alpha_, L_;
    double lengthscale_, y_mean_, y_scale_;
    std::size_t n_ = 0;
};

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
}

// Expected improvement for minimization.
inline double expected_improvement(double mu, double sigma, double best) {
    double z = (best - mu) / sigma;
    return (best - mu) * normal_cdf(z) + sigma * normal_pdf(z);
}

}  // namespace detail

inline BoResult bo_optimize(WorkflowDag& dag, const ProfileTable& profiles,
                            const ExecutionBackend& backend, const PricingParams& pricing,
                            const BoParams& params, std::uint64_t seed) {
    validate_dag_or_throw(dag);
    BoResult result;

    std::vector<std::string> ids;
    for (auto& n : dag.nodes) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());
    const std::size_t dims = 2 * ids.size();

    for (auto& n : dag.nodes) n.invocations = 0;

    // A point is a vector of grid indices: (cpu_idx, mem_idx) per node.
    auto random_point = [&](SplitMix& rng) {
        std::vector<int> p(dims);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            p[2 * i] = static_cast<int>(rng.next_below(kBoCpuSteps));
            p[2 * i + 1] = static_cast<int>(rng.next_below(kBoMemSteps));
        }
        return p;
    };
    auto normalize = [&](const std::vector<int>& p) {
        std::vector<double> x(dims);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            x[2 * i] = static_cast<double>(p[2 * i]) / (kBoCpuSteps - 1);
            x[2 * i + 1] = static_cast<double>(p[2 * i + 1]) / (kBoMemSteps - 1);
        }
        return x;
    };
    auto to_configs = [&](const std::vector<int>& p) {
        ConfigMap m;
        for (std::size_t i = 0; i < ids.size(); ++i)
            m[ids[i]] = ResourceConfig{bo_cpu_value(p[2 * i]), bo_mem_value(p[2 * i + 1])};
        return m;
    };

    std::vector<std::vector<double>> X;
    std::vector<double> y;  // penalized objective
    double best_penalized = std::numeric_limits<double>::infinity();
    bool have_feasible = false;
    double best_feasible_cost = std::numeric_limits<double>::infinity();
    ConfigMap best_configs;

    for (int round = 0; round < params.budget; ++round) {
        std::vector<int> point;
        if (round < params.init_random || X.size() < 2) {
            SplitMix rng(hash_combine(seed, static_cast<std::uint64_t>(round)));
            point = random_point(rng);
        } else {
            detail::GaussianProcess gp(X, y, params.lengthscale, params.noise_variance);
            double best = gp.best_observed();
            SplitMix rng(hash_combine(seed, 0x10000ull + static_cast<std::uint64_t>(round)));
            double best_ei = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < params.candidates_per_round; ++c) {
                std::vector<int> cand = random_point(rng);
                double mu, sigma;
                gp.predict(normalize(cand), mu, sigma);
                double ei = detail::expected_improvement(mu, sigma, best);
                if (ei > best_ei) {  // strict: ties resolve to the lowest index
                    best_ei = ei;
                    point = cand;
                }
            }
        }

        ConfigMap configs = to_configs(point);
        for (auto& [id, cfg] : configs) dag.find(id)->config = cfg;
        auto out = try_execute_workflow(dag, profiles, backend,
                                        hash_combine(seed, 0x20000ull + round));

        double cost = 0.0;
        for (auto& [id, rt] : out.runtimes) cost += function_cost(rt, dag.find(id)->config, pricing);
        bool feasible = out.ok && out.total <= dag.slo.end_to_end_seconds;
        double penalized = cost + (feasible ? 0.0 : params.slo_penalty);

        X.push_back(normalize(point));
        y.push_back(penalized);

        bool improved = feasible ? (!have_feasible || cost < best_feasible_cost)
                                 : (!have_feasible && penalized < best_penalized);
        if (improved) {
            best_configs = configs;
            if (feasible) {
                have_feasible = true;
                best_feasible_cost = cost;
            }
        }
        best_penalized = std::min(best_penalized, penalized);

        double cpu_sum = 0.0;
        int mem_sum = 0;
        for (auto& [id, cfg] : configs) {
            cpu_sum += cfg.cpu;
            mem_sum += cfg.mem;
        }
        result.trace.add(TraceRecord{0, "bo", "*", "joint", cpu_sum, mem_sum, out.total, cost,
                                     improved, out.elapsed});
    }

    for (auto& [id, cfg] : best_configs) dag.find(id)->config = cfg;
    result.configs = std::move(best_configs);
    return result;
}

}  // namespace aarc
