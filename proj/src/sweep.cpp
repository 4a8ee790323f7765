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

#include "qfilt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

#include "qfilt/analytic.hpp"
#include "qfilt/errors.hpp"

namespace qfilt {

using nlohmann::json;

namespace {

constexpr double kDefaultRobustnessChannel = 0.7;
constexpr int kDefaultPoints = 21;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

void check_range(const std::vector<double>& values, double lo, double hi, const std::string& what) {
    for (double v : values) {
        if (!(v >= lo - 1e-12 && v <= hi + 1e-12)) {
            throw ConfigError(what + " value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        }
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

unsigned worker_count(int threads, size_t jobs) {
    unsigned w = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(threads);
    return std::max(1u, std::min<unsigned>(w, static_cast<unsigned>(jobs)));
}

std::optional<ComplexMatrix> ansatz_for(MetricKind task, int n, NoiseKind kind) {
    if (n == 0) {
        return ComplexMatrix::Identity(2, 2);
    }
    if (n > 2 || (task == MetricKind::QFI && n > 1)) {
        return std::nullopt;
    }
    return ansatz_unitary(n, kind);
}

std::optional<ObjectiveValue> closed_form_for(MetricKind task, int n, const NoiseSpec& noise) {
    try {
        switch (task) {
            case MetricKind::Fidelity:
                return ObjectiveValue{closed_form(ClosedFormMetric::F, n, noise),
                                      closed_form(ClosedFormMetric::P, n, noise)};
            case MetricKind::CHSHFixed:
                return ObjectiveValue{closed_form(ClosedFormMetric::BetaFix, n, noise),
                                      closed_form(ClosedFormMetric::P, n, noise)};
            case MetricKind::QFI:
                if (noise.kind == NoiseKind::Depolarizing) {
                    return ObjectiveValue{closed_form_qfi(n, noise.q), 1.0};
                }
                return std::nullopt;
            case MetricKind::CHSHOpt:
                return std::nullopt;
        }
    } catch (const Unsupported&) {
    }
    return std::nullopt;
}

struct Job {
    int n;
    double q;
    std::optional<RobustnessSpec> robustness;
};

std::vector<SweepRow> run_job(const SweepConfig& cfg, const Job& job, int optimizer_threads) {
    const NoiseSpec noise{cfg.kind, job.q};
    const ExperimentSpec spec{cfg.task, job.n, noise, job.robustness, 0.0};
    spec.validate();
    const double q_a = job.robustness && job.robustness->q_a ? *job.robustness->q_a : 1.0;
    const double s = job.robustness && job.robustness->s ? *job.robustness->s : 1.0;
    auto row = [&](ObjectiveValue v, RowSource src, int restarts, int iterations, std::uint64_t seed) {
        return SweepRow{cfg.task, cfg.kind, job.n, job.q, q_a, s, v.value, v.probability, src, restarts, iterations, seed};
    };

    std::vector<SweepRow> rows;
    if (cfg.run_optimizer) {
        OptimizerConfig oc = cfg.optimizer;
        oc.threads = optimizer_threads;
        const auto r = optimize_experiment(spec, oc);
        const int restarts = spec.parameter_count() == 0 ? 1 : oc.restarts;
        rows.push_back(row({r.best_value, r.best_probability}, RowSource::Optimized, restarts, r.iterations_used, oc.seed));
    }
    if (auto u = ansatz_for(cfg.task, job.n, cfg.kind)) {
        rows.push_back(row(evaluate_encoding(spec, *u), RowSource::Ansatz, 0, 0, 0));
    }
    if (q_a == 1.0 && s == 1.0) {
        if (auto v = closed_form_for(cfg.task, job.n, noise)) {
            rows.push_back(row(*v, RowSource::ClosedForm, 0, 0, 0));
        }
    }
    return rows;
}

}  // namespace

MetricKind parse_metric_kind(const std::string& s) {
    for (MetricKind k : {MetricKind::Fidelity, MetricKind::CHSHFixed, MetricKind::CHSHOpt, MetricKind::QFI}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw ConfigError("unknown task '" + s + "' (expected fidelity, chsh-fixed, chsh-opt or qfi)");
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) {
        throw ConfigError("grid needs at least one point");
    }
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        out.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
    }
    return out;
}

std::vector<double> parse_grid(const json& j, const std::string& what) {
    try {
        if (j.is_number()) {
            return {j.get<double>()};
        }
        if (j.is_array()) {
            auto v = j.get<std::vector<double>>();
            if (v.empty()) {
                throw ConfigError(what + " grid is empty");
            }
            return v;
        }
        if (j.is_object()) {
            reject_unknown_keys(j, {"min", "max", "points"}, what + " grid");
            return linspace(j.at("min").get<double>(), j.at("max").get<double>(), j.at("points").get<int>());
        }
    } catch (const json::exception& e) {
        throw ConfigError("bad " + what + " grid: " + e.what());
    }
    throw ConfigError(what + " grid must be a number, an array or {min, max, points}");
}

OptimizerConfig parse_optimizer_config(const json& j) {
    OptimizerConfig c;
    if (j.is_null()) {
        return c;
    }
    reject_unknown_keys(j, {"method", "max_iters", "step", "decay", "fd_step", "restarts", "seed", "tol", "patience"},
                        "optimizer");
    c.max_iters = get_or(j, "max_iters", c.max_iters);
    c.step = get_or(j, "step", c.step);
    c.decay = get_or(j, "decay", c.decay);
    c.fd_step = get_or(j, "fd_step", c.fd_step);
    c.restarts = get_or(j, "restarts", c.restarts);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.tol = get_or(j, "tol", c.tol);
    c.patience = get_or(j, "patience", c.patience);
    try {
        c.method = parse_optimizer_method(get_or<std::string>(j, "method", to_string(c.method)));
        c.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

json to_json(const OptimizerConfig& c) {
    return {{"method", to_string(c.method)}, {"max_iters", c.max_iters}, {"step", c.step},
            {"decay", c.decay},              {"fd_step", c.fd_step},     {"restarts", c.restarts},
            {"seed", c.seed},                {"tol", c.tol},             {"patience", c.patience}};
}

SweepConfig SweepConfig::from_json(const json& j) {
    reject_unknown_keys(j, {"task", "kind", "q", "n", "robustness", "optimize", "optimizer", "output", "threads"},
                        "sweep config");
    SweepConfig c;
    try {
        c.task = parse_metric_kind(get_or<std::string>(j, "task", "fidelity"));
        c.kind = parse_noise_kind(get_or<std::string>(j, "kind", "dephasing"));
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("robustness")) {
        const json& r = j.at("robustness");
        reject_unknown_keys(r, {"vary", "values"}, "robustness");
        const auto vary = get_or<std::string>(r, "vary", "");
        if (vary == "q_a") {
            c.vary = RobustnessParam::AncillaNoise;
            c.robustness_values = r.contains("values") ? parse_grid(r.at("values"), "q_a")
                                                       : linspace(1.0 / 3.0, 1.0, kDefaultPoints);
        } else if (vary == "s") {
            c.vary = RobustnessParam::Crosstalk;
            c.robustness_values = r.contains("values") ? parse_grid(r.at("values"), "s") : linspace(0.5, 1.0, kDefaultPoints);
        } else {
            throw ConfigError("robustness.vary must be \"q_a\" or \"s\"");
        }
    }
    if (j.contains("q")) {
        c.q_values = parse_grid(j.at("q"), "q");
    } else if (c.vary != RobustnessParam::None) {
        c.q_values = {kDefaultRobustnessChannel};
    } else {
        c.q_values = linspace(NoiseSpec::q_min(c.kind), 1.0, kDefaultPoints);
    }
    if (j.contains("n")) {
        const json& n = j.at("n");
        try {
            c.n_values = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad n list: ") + e.what());
        }
    }
    c.run_optimizer = get_or(j, "optimize", true);
    c.optimizer = parse_optimizer_config(j.value("optimizer", json()));
    c.output = get_or<std::string>(j, "output", "");
    c.threads = get_or(j, "threads", 1);
    c.validate();
    return c;
}

SweepConfig SweepConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return from_json(j);
}

void SweepConfig::validate() const {
    check_range(q_values, NoiseSpec::q_min(kind), 1.0, "q");
    if (n_values.empty()) {
        throw ConfigError("n list is empty");
    }
    for (int n : n_values) {
        if (n < 0 || n > 3) {
            throw ConfigError("n values must be in 0..3");
        }
    }
    if (vary == RobustnessParam::AncillaNoise) {
        check_range(robustness_values, 1.0 / 3.0, 1.0, "q_a");
    } else if (vary == RobustnessParam::Crosstalk) {
        check_range(robustness_values, 0.0, 1.0, "s");
    }
    if (threads < 0) {
        throw ConfigError("threads must be non-negative");
    }
    try {
        optimizer.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

std::string to_string(RowSource source) {
    switch (source) {
        case RowSource::Optimized:
            return "optimized";
        case RowSource::Ansatz:
            return "ansatz";
        case RowSource::ClosedForm:
            return "closed_form";
    }
    return "?";
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<Job> jobs;
    for (int n : cfg.n_values) {
        for (double q : cfg.q_values) {
            if (cfg.vary == RobustnessParam::None) {
                jobs.push_back({n, q, std::nullopt});
                continue;
            }
            for (double v : cfg.robustness_values) {
                RobustnessSpec r;
                (cfg.vary == RobustnessParam::AncillaNoise ? r.q_a : r.s) = v;
                jobs.push_back({n, q, r});
            }
        }
    }

    const unsigned workers = worker_count(cfg.threads, jobs.size());
    const int optimizer_threads = workers == 1 ? cfg.threads : 1;
    std::vector<std::vector<SweepRow>> per_job(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) {
            try {
                per_job[i] = run_job(cfg, jobs[i], optimizer_threads);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::vector<SweepRow> rows;
    for (auto& block : per_job) {
        rows.insert(rows.end(), block.begin(), block.end());
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tuple(a.n, a.q, a.q_a, a.s, static_cast<int>(a.source)) <
               std::tuple(b.n, b.q, b.q_a, b.s, static_cast<int>(b.source));
    });
    return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        os << to_string(r.task) << ',' << to_string(r.kind) << ',' << r.n << ',' << fmt(r.q) << ',' << fmt(r.q_a) << ','
           << fmt(r.s) << ',' << fmt(r.value) << ',' << fmt(r.probability) << ',' << to_string(r.source) << ','
           << r.restarts << ',' << r.iterations << ',' << r.seed << '\n';
    }
}

PointConfig PointConfig::from_json(const json& j) {
    reject_unknown_keys(j, {"task", "kind", "q", "n", "q_a", "s", "theta", "optimizer", "output"}, "optimize config");
    PointConfig c;
    try {
        c.spec.metric = parse_metric_kind(get_or<std::string>(j, "task", "fidelity"));
        c.spec.noise = {parse_noise_kind(get_or<std::string>(j, "kind", "dephasing")), get_or(j, "q", 1.0)};
        c.spec.n_ancillas = get_or(j, "n", 1);
        c.spec.theta = get_or(j, "theta", 0.0);
        if (j.contains("q_a") || j.contains("s")) {
            RobustnessSpec r;
            if (j.contains("q_a")) r.q_a = get_or(j, "q_a", 1.0);
            if (j.contains("s")) r.s = get_or(j, "s", 1.0);
            c.spec.robustness = r;
        }
        c.spec.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    c.optimizer = parse_optimizer_config(j.value("optimizer", json()));
    c.output = get_or<std::string>(j, "output", "");
    return c;
}

PointConfig PointConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return from_json(j);
}

json PointConfig::echo() const {
    json j = {{"task", to_string(spec.metric)},
              {"kind", to_string(spec.noise.kind)},
              {"q", spec.noise.q},
              {"n", spec.n_ancillas},
              {"theta", spec.theta},
              {"optimizer", to_json(optimizer)}};
    if (spec.robustness && spec.robustness->q_a) j["q_a"] = *spec.robustness->q_a;
    if (spec.robustness && spec.robustness->s) j["s"] = *spec.robustness->s;
    return j;
}

json run_point(const PointConfig& cfg) {
    const auto r = optimize_experiment(cfg.spec, cfg.optimizer);
    json restart_values = json::array();
    for (double v : r.restart_values) {
        restart_values.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    json out = {{"config", cfg.echo()},
                {"result",
                 {{"best_value", r.best_value},
                  {"best_probability", r.best_probability},
                  {"best_params", r.best_params},
                  {"iterations_used", r.iterations_used},
                  {"restart_values", restart_values},
                  {"seed", r.seed},
                  {"method", to_string(r.method)},
                  {"parameter_count", cfg.spec.parameter_count()}}}};
    if (auto u = ansatz_for(cfg.spec.metric, cfg.spec.n_ancillas, cfg.spec.noise.kind)) {
        const auto v = evaluate_encoding(cfg.spec, *u);
        out["ansatz"] = {{"value", v.value}, {"probability", v.probability}};
    }
    if (!cfg.spec.robustness) {
        if (auto v = closed_form_for(cfg.spec.metric, cfg.spec.n_ancillas, cfg.spec.noise)) {
            out["closed_form"] = {{"value", v->value}, {"probability", v->probability}};
        }
    }
    return out;
}

int resolve_threads(std::optional<int> requested) {
    if (requested) {
        if (*requested < 0) {
            throw ConfigError("--threads must be non-negative");
        }
        return *requested;
    }
    if (const char* env = std::getenv("QFILT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0) {
            throw ConfigError(std::string("QFILT_THREADS must be a non-negative integer, got '") + env + "'");
        }
        return static_cast<int>(v);
    }
    return 1;
}

}  // namespace qfilt
