// Copyright 2026 The qfilt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfilt/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "qfilt/errors.hpp"

namespace qfilt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Top 53 bits of the engine output as a double in [0, 1). Spelled out so the
// sequence does not depend on the standard library's distribution code.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Tracker {
    std::vector<double> best_params;
    double best_value = kNegInf;
    double best_probability = 0.0;
    bool seen_finite = false;

    void offer(std::span<const double> p, const ObjectiveValue& v) {
        if (!std::isfinite(v.value)) {
            return;
        }
        seen_finite = true;
        if (v.value > best_value) {
            best_value = v.value;
            best_probability = v.probability;
            best_params.assign(p.begin(), p.end());
        }
    }
};

class Adam {
   public:
    explicit Adam(size_t dim) : m_(dim, 0.0), v_(dim, 0.0) {}

    void ascend(std::vector<double>& p, const std::vector<double>& g, double lr) {
        ++t_;
        const double c1 = 1.0 - std::pow(kBeta1, t_);
        const double c2 = 1.0 - std::pow(kBeta2, t_);
        for (size_t i = 0; i < p.size(); ++i) {
            m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g[i];
            v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g[i] * g[i];
            p[i] += lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
        }
    }

   private:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEps = 1e-12;
    std::vector<double> m_;
    std::vector<double> v_;
    int t_ = 0;
};

ObjectiveValue safe_eval(const Objective& f, std::span<const double> p) {
    ObjectiveValue v = f(p);
    if (!std::isfinite(v.value)) {
        v.value = kNegInf;
    }
    return v;
}

}  // namespace

std::string to_string(OptimizerMethod method) {
    switch (method) {
        case OptimizerMethod::Auto:
            return "auto";
        case OptimizerMethod::GradientAscent:
            return "gradient";
        case OptimizerMethod::SPSA:
            return "spsa";
    }
    return "?";
}

OptimizerMethod parse_optimizer_method(const std::string& s) {
    if (s == "auto") return OptimizerMethod::Auto;
    if (s == "gradient" || s == "gradient-ascent") return OptimizerMethod::GradientAscent;
    if (s == "spsa") return OptimizerMethod::SPSA;
    throw InvalidArgument("unknown optimizer method '" + s + "'");
}

void OptimizerConfig::validate() const {
    if (max_iters <= 0 || restarts <= 0 || patience <= 0) {
        throw InvalidArgument("optimizer iteration, restart and patience counts must be positive");
    }
    if (!(step > 0.0) || !(fd_step > 0.0) || !(tol >= 0.0)) {
        throw InvalidArgument("optimizer step sizes must be positive");
    }
    if (!(decay > 0.0 && decay <= 1.0)) {
        throw InvalidArgument("optimizer decay must be in (0, 1]");
    }
    if (threads < 0) {
        throw InvalidArgument("thread count must be non-negative");
    }
}

OptimizerMethod OptimizerConfig::resolve(int dim) const {
    if (method != OptimizerMethod::Auto) {
        return method;
    }
    return dim <= 80 ? OptimizerMethod::GradientAscent : OptimizerMethod::SPSA;
}

bool GradientEstimate::any_flagged() const { return std::find(flagged.begin(), flagged.end(), true) != flagged.end(); }

GradientEstimate gradient_fd(const Objective& objective, std::span<const double> params, double fd_step) {
    GradientEstimate out{std::vector<double>(params.size(), 0.0), std::vector<bool>(params.size(), false)};
    std::vector<double> probe(params.begin(), params.end());
    for (size_t i = 0; i < params.size(); ++i) {
        probe[i] = params[i] + fd_step;
        const double up = objective(probe).value;
        probe[i] = params[i] - fd_step;
        const double down = objective(probe).value;
        probe[i] = params[i];
        if (std::isfinite(up) && std::isfinite(down)) {
            out.grad[i] = (up - down) / (2.0 * fd_step);
        } else {
            out.flagged[i] = true;
        }
    }
    return out;
}

RestartOutcome run_restart(const Objective& objective, int dim, const OptimizerConfig& cfg, int index) {
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(index));
    std::vector<double> p(static_cast<size_t>(dim));
    for (double& x : p) {
        x = 2.0 * std::numbers::pi * unit_uniform(rng);
    }

    Tracker tracker;
    tracker.offer(p, safe_eval(objective, p));
    std::vector<double> trace{tracker.best_value};

    const OptimizerMethod method = cfg.resolve(dim);
    Adam adam(p.size());
    std::vector<double> g(p.size());
    std::vector<double> delta(p.size());
    std::vector<double> probe(p.size());
    double lr = cfg.step;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        if (method == OptimizerMethod::GradientAscent) {
            g = gradient_fd(objective, p, cfg.fd_step).grad;
        } else {
            for (double& d : delta) {
                d = (rng() >> 63) ? 1.0 : -1.0;
            }
            for (size_t i = 0; i < p.size(); ++i) probe[i] = p[i] + cfg.fd_step * delta[i];
            const double up = safe_eval(objective, probe).value;
            for (size_t i = 0; i < p.size(); ++i) probe[i] = p[i] - cfg.fd_step * delta[i];
            const double down = safe_eval(objective, probe).value;
            const double slope = std::isfinite(up) && std::isfinite(down) ? (up - down) / (2.0 * cfg.fd_step) : 0.0;
            for (size_t i = 0; i < p.size(); ++i) p[i] += lr * slope * delta[i];
        }
        if (method == OptimizerMethod::GradientAscent) {
            adam.ascend(p, g, lr);
        }
        lr *= cfg.decay;
        tracker.offer(p, safe_eval(objective, p));
        trace.push_back(tracker.best_value);
        const size_t k = trace.size() - 1;
        if (k >= static_cast<size_t>(cfg.patience)) {
            const double before = trace[k - static_cast<size_t>(cfg.patience)];
            if (std::isfinite(before) && trace[k] - before < cfg.tol) {
                ++it;
                break;
            }
        }
    }

    RestartOutcome out;
    out.failed = !tracker.seen_finite;
    out.params = tracker.seen_finite ? tracker.best_params : p;
    out.value = tracker.best_value;
    out.probability = tracker.best_probability;
    out.iterations = it;
    out.best_trace = std::move(trace);
    return out;
}

OptimizationResult optimize(const Objective& objective, int dim, const OptimizerConfig& cfg) {
    cfg.validate();
    if (dim < 0) {
        throw InvalidArgument("parameter dimension must be non-negative");
    }
    OptimizationResult result;
    result.seed = cfg.seed;
    result.method = cfg.resolve(dim);

    if (dim == 0) {
        const ObjectiveValue v = safe_eval(objective, {});
        if (!std::isfinite(v.value)) {
            throw OptimizationFailed("objective is not finite at the only admissible point");
        }
        result.best_value = v.value;
        result.best_probability = v.probability;
        result.iterations_used = 0;
        result.restart_values = {v.value};
        result.best_trace = {v.value};
        return result;
    }

    std::vector<RestartOutcome> outcomes(static_cast<size_t>(cfg.restarts));
    unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                        : static_cast<unsigned>(cfg.threads);
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.restarts));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int r = next++; r < cfg.restarts; r = next++) {
            outcomes[static_cast<size_t>(r)] = run_restart(objective, dim, cfg, r);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    int best = -1;
    result.iterations_used = 0;
    for (size_t r = 0; r < outcomes.size(); ++r) {
        const auto& o = outcomes[r];
        result.restart_values.push_back(o.failed ? kNegInf : o.value);
        result.iterations_used += o.iterations;
        if (!o.failed && (best < 0 || o.value > outcomes[static_cast<size_t>(best)].value)) {
            best = static_cast<int>(r);
        }
    }
    if (best < 0) {
        throw OptimizationFailed("every restart produced only non-finite objective values");
    }
    const auto& w = outcomes[static_cast<size_t>(best)];
    result.best_params = w.params;
    result.best_value = w.value;
    result.best_probability = w.probability;
    result.best_trace = w.best_trace;
    return result;
}

}  // namespace qfilt
