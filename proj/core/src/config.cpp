#include "streamchroma/config.hpp"

#include "streamchroma/errors.hpp"
#include "streamchroma/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace streamchroma {

RunConfig RunConfig::paper_defaults() {
    RunConfig cfg;
    cfg.mode = Mode::Paper;
    cfg.epsilon = 1e-8;
    cfg.alpha = 150.0;
    cfg.rho = 0; // derived from n in resolve_params
    cfg.anchor_beta = 50.0;
    cfg.holey_coeff = 1e7 * cfg.epsilon;
    return cfg;
}

RunConfig RunConfig::desk_defaults() { return RunConfig{}; }

void RunConfig::set(const std::string& key, const std::string& value) {
    auto as_u64 = [&] { return std::stoull(value); };
    auto as_f = [&] { return std::stod(value); };
    if (key == "mode") {
        if (value == "paper") *this = paper_defaults();
        else if (value == "desk") mode = Mode::Desk;
        else throw Error("unknown mode '" + value + "'");
    } else if (key == "seed") seed = as_u64();
    else if (key == "epsilon") epsilon = as_f();
    else if (key == "eta") eta = as_f();
    else if (key == "rho") rho = as_u64();
    else if (key == "c_rho") c_rho = as_f();
    else if (key == "alpha") alpha = as_f();
    else if (key == "p_rt") p_rt = as_f();
    else if (key == "p_sg") p_sg = as_f();
    else if (key == "field_exponent") field_exponent = static_cast<uint32_t>(as_u64());
    else if (key == "fingerprint_rows") fingerprint_rows = static_cast<uint32_t>(as_u64());
    else if (key == "anchor_beta") anchor_beta = as_f();
    else if (key == "acd_oracle") acd_oracle = (value == "1" || value == "true");
    else if (key == "min_delta") min_delta = as_u64();
    else if (key == "holey_coeff") holey_coeff = as_f();
    else if (key == "rate_l3") rate_l3 = as_f();
    else if (key == "rate_l4") rate_l4 = as_f();
    else if (key == "rate_l5") rate_l5 = as_f();
    else if (key == "rate_l6") rate_l6 = as_f();
    else if (key == "retry_budget") retry_budget = static_cast<uint32_t>(as_u64());
    else throw Error("unknown config key '" + key + "'");
}

std::map<std::string, std::string> RunConfig::dump() const {
    std::map<std::string, std::string> kv;
    auto f = [](double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    kv["mode"] = mode == Mode::Paper ? "paper" : "desk";
    kv["seed"] = std::to_string(seed);
    kv["epsilon"] = f(epsilon);
    kv["eta"] = f(eta);
    kv["rho"] = std::to_string(rho);
    kv["c_rho"] = f(c_rho);
    kv["alpha"] = f(alpha);
    kv["p_rt"] = f(p_rt);
    kv["p_sg"] = f(p_sg);
    kv["field_exponent"] = std::to_string(field_exponent);
    kv["fingerprint_rows"] = std::to_string(fingerprint_rows);
    kv["anchor_beta"] = f(anchor_beta);
    kv["acd_oracle"] = acd_oracle ? "1" : "0";
    kv["min_delta"] = std::to_string(min_delta);
    kv["holey_coeff"] = f(holey_coeff);
    kv["rate_l3"] = f(rate_l3);
    kv["rate_l4"] = f(rate_l4);
    kv["rate_l5"] = f(rate_l5);
    kv["rate_l6"] = f(rate_l6);
    kv["retry_budget"] = std::to_string(retry_budget);
    return kv;
}

double EffectiveParams::level_prob(uint32_t i) const {
    double p = 4.0 * static_cast<double>(rho) / static_cast<double>(sparsity_level(i));
    return std::min(1.0, p);
}

EffectiveParams resolve_params(const RunConfig& cfg, Vertex n, uint32_t delta) {
    EffectiveParams ep;
    ep.n = n;
    ep.delta = delta;
    ep.mode = cfg.mode;
    ep.seed = cfg.seed;
    ep.epsilon = cfg.epsilon;
    ep.eta = cfg.eta;
    ep.alpha = cfg.alpha;
    ep.p_rt = cfg.p_rt;
    ep.p_sg = cfg.p_sg;
    ep.fingerprint_rows = cfg.fingerprint_rows;
    ep.retry_budget = cfg.retry_budget;

    double ln_n = std::log(std::max<double>(2.0, n));
    if (cfg.mode == Mode::Paper) {
        ep.rho = cfg.rho > 0
                     ? cfg.rho
                     : static_cast<uint64_t>(std::ceil(cfg.c_rho * ln_n / (cfg.epsilon * cfg.epsilon)));
    } else {
        ep.rho = std::max<uint64_t>(1, cfg.rho);
    }
    ep.p_ds = 1.0 / static_cast<double>(ep.rho);

    if (cfg.mode == Mode::Paper) {
        // delta >= 2*alpha*rho^3 is the regime where sketches beat storing edges
        long double bound = 2.0L * cfg.alpha * powl(static_cast<long double>(ep.rho), 3);
        ep.fallback_threshold =
            bound > static_cast<long double>(UINT64_MAX) ? UINT64_MAX : static_cast<uint64_t>(bound);
    } else {
        ep.fallback_threshold = cfg.min_delta;
    }
    ep.fallback = delta < ep.fallback_threshold;

    double d = std::max<double>(2.0, delta);
    double r = static_cast<double>(ep.rho);
    ep.rate_l3 = cfg.rate_l3 >= 0 ? cfg.rate_l3 : r / d;
    ep.rate_l4 = cfg.rate_l4 >= 0 ? cfg.rate_l4 : r / d;
    ep.rate_l5 = cfg.rate_l5 >= 0 ? cfg.rate_l5 : r * r / d;
    ep.rate_l6 = cfg.rate_l6 >= 0 ? cfg.rate_l6 : r * r * r / d;

    if (!ep.fallback) {
        double ratio = static_cast<double>(delta) / static_cast<double>(ep.rho);
        ep.levels = ratio <= 1.0 ? 1 : static_cast<uint32_t>(std::ceil(std::log2(ratio))) + 1;
        ep.prime = choose_prime(std::max<uint64_t>(2, n), cfg.field_exponent).p;
    }

    double anchor = cfg.anchor_beta * ln_n / (cfg.epsilon * cfg.epsilon * d);
    ep.anchor_prob = std::min(1.0, anchor);

    ep.holey_threshold = static_cast<uint64_t>(std::ceil(cfg.holey_coeff * d));
    return ep;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

} // namespace streamchroma
