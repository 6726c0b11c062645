#pragma once

#include "streamchroma/graph.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace streamchroma {

enum class Mode { Paper, Desk };

/// Run parameters. Paper mode pins the constants the analysis uses; desk mode
/// scales everything down so the pipeline actually executes on instances that
/// fit in a test suite. Every field can be overridden from a config file or
/// the command line.
struct RunConfig {
    Mode mode = Mode::Desk;
    uint64_t seed = 1;

    double epsilon = 0.4;      // paper: 1e-8
    double eta = 0.5;          // decomposition sparsity constant; unpinned upstream
    uint64_t rho = 4;          // paper: ceil(c_rho * ln(n) / eps^2)
    double c_rho = 1.0;
    double alpha = 1.0;        // paper: 150

    double p_rt = 0.1;         // Reed Transform activation
    double p_sg = 0.1;         // slack-generation activation

    uint32_t field_exponent = 3;   // prime p in [n^c, 2n^c]
    uint32_t fingerprint_rows = 3; // t

    double anchor_beta = 2.0;  // anchor rate = min(1, beta * eps^-2 * ln(n) / delta)
    bool acd_oracle = false;   // exact decomposition from a replayed graph (tests)

    uint64_t min_delta = 8;    // desk fallback threshold; paper derives 2*alpha*rho^3
    double holey_coeff = 0.1;  // holey anti-edge threshold = coeff * delta

    // palette rate overrides; negative = use the rho-based formula
    double rate_l3 = -1.0, rate_l4 = -1.0, rate_l5 = -1.0, rate_l6 = -1.0;

    uint32_t retry_budget = 100;

    static RunConfig paper_defaults();
    static RunConfig desk_defaults();

    void set(const std::string& key, const std::string& value);
    std::map<std::string, std::string> dump() const;
};

/// Parameters resolved against a concrete stream header.
struct EffectiveParams {
    Vertex n = 0;
    uint32_t delta = 0;
    uint64_t rho = 0;
    double epsilon = 0;
    double eta = 0;
    double alpha = 0;
    double p_rt = 0, p_sg = 0, p_ds = 0;
    double anchor_prob = 0;
    double rate_l3 = 0, rate_l4 = 0, rate_l5 = 0, rate_l6 = 0;
    uint32_t levels = 0;          // sketch levels 0..levels-1, s_i = 2^i * rho
    uint64_t fallback_threshold = 0;
    bool fallback = false;        // delta below threshold: store everything
    uint64_t holey_threshold = 0; // anti-edges at which a clique counts as holey
    uint64_t prime = 0;           // field modulus
    uint32_t fingerprint_rows = 0;
    uint32_t retry_budget = 0;
    uint64_t seed = 0;
    Mode mode = Mode::Desk;

    uint64_t sparsity_level(uint32_t i) const { return (uint64_t(1) << i) * rho; }
    double level_prob(uint32_t i) const;
    // k-friend thresholds consumed by the pipeline
    double k_two_rho() const { return 2.0 * static_cast<double>(rho); }
    double k_rho() const { return static_cast<double>(rho); }
    double k_popular() const { return alpha * static_cast<double>(rho) * static_cast<double>(rho); }
};

EffectiveParams resolve_params(const RunConfig& cfg, Vertex n, uint32_t delta);

RunConfig load_config_file(const std::string& path, RunConfig base = RunConfig{});

} // namespace streamchroma
