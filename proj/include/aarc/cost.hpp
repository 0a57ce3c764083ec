#pragma once

// Decoupled pricing: cost = runtime * (mu0 * cpu + mu1 * mem_GB) + mu2.

#include <vector>

#include "aarc/types.hpp"

namespace aarc {

struct PricingParams {
    double mu0 = 0.512;   // per vCPU-second
    double mu1 = 0.001;   // per GB-second
    double mu2 = 0.0;     // per request / orchestration event
};

// mem is stored in MB and billed in GB; 1 GB = 1024 MB.
inline double function_cost(double runtime_s, const ResourceConfig& config,
                            const PricingParams& pricing = {}) {
    double mem_gb = static_cast<double>(config.mem) / 1024.0;
    return runtime_s * (pricing.mu0 * config.cpu + pricing.mu1 * mem_gb) + pricing.mu2;
}

struct CostEntry {
    double runtime_s;
    ResourceConfig config;
};

inline double aggregate_cost(const std::vector<CostEntry>& entries,
                             const PricingParams& pricing = {}) {
    double sum = 0.0;
    for (auto& e : entries) sum += function_cost(e.runtime_s, e.config, pricing);
    return sum;
}

}  // namespace aarc
