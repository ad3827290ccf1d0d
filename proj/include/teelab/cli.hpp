// Copyright 2026 The teelab Authors
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

// Scenario runner behind the `teelab` command line tool. Every scenario
// returns a JSON report and a list of named checks; the process exit code is
// 0 iff every check passed.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "teelab/audit.hpp"
#include "teelab/categories.hpp"
#include "teelab/error.hpp"
#include "teelab/fusion.hpp"
#include "teelab/ring.hpp"
#include "teelab/toric.hpp"
#include "teelab/trace.hpp"

namespace teelab::cli {

using nlohmann::json;

inline constexpr const char *kVersion = "0.1.0";

struct ScenarioConfig {
    std::string kind;  // fusion | ring | stabilizer | audit | sweep | selftest
    json params = json::object();
    std::string output;  // report path; empty means standard output
    std::string units = "nats";
    bool timings = false;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    double margin = 0.0;  // nats
    std::string detail;
};

struct RunReport {
    json report;
    std::vector<CheckResult> checks;
    std::string csv;

    bool pass() const {
        for (const auto &c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto &c : checks)
            if (!c.pass) out.push_back(c.name);
        return out;
    }
    int exit_code() const {
        return pass() ? 0 : 1;
    }
};

/// 64-bit FNV-1a, as 16 hex digits.
inline std::string fnv1a(const std::string &data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

/// Typed access to scenario parameters; type mismatches are ConfigError.
class Params {
   public:
    explicit Params(const json &j) : j_(j) {
        if (!j_.is_object()) throw ConfigError("parameters must be a JSON object");
    }
    bool has(const std::string &key) const {
        return j_.contains(key) && !j_[key].is_null();
    }
    template <typename T>
    T get(const std::string &key, T fallback) const {
        if (!has(key)) return fallback;
        return require<T>(key);
    }
    template <typename T>
    T require(const std::string &key) const {
        if (!has(key)) throw ConfigError("missing parameter '" + key + "'");
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception &) {
            throw ConfigError("parameter '" + key + "' has the wrong type");
        }
    }
    template <typename T>
    std::vector<T> list(const std::string &key, std::vector<T> fallback) const {
        if (!has(key)) return fallback;
        if (!j_[key].is_array()) return {require<T>(key)};
        return require<std::vector<T>>(key);
    }

   private:
    const json &j_;
};

namespace detail {

class Context {
   public:
    explicit Context(const ScenarioConfig &cfg) : bits_(cfg.units == "bits") {
        if (cfg.units != "nats" && cfg.units != "bits") throw ConfigError("units must be 'nats' or 'bits'");
    }
    /// Entropy-valued quantity in the display unit.
    double show(double nats) const {
        return bits_ ? nats / std::log(2.0) : nats;
    }
    void check(std::string name, bool pass, double margin, std::string detail = "") {
        checks.push_back({std::move(name), pass, margin, std::move(detail)});
    }
    void check_margin(std::string name, double margin, double floor, std::string detail = "") {
        check(std::move(name), margin >= -floor, margin, std::move(detail));
    }

    std::vector<CheckResult> checks;
    std::string csv;

   private:
    bool bits_;
};

inline json audit_json(const audit::AuditReport &r, Context &ctx, const std::string &prefix) {
    json j = audit::report_to_json(r);
    for (const auto &c : r.checks)
        ctx.check(prefix + c.name, audit::passed(c.status), c.margin,
                  c.status == audit::Status::NotEvaluated ? "not evaluated" : c.where);
    return j;
}

inline void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// fusion

inline json run_fusion(const Params &p, Context &ctx) {
    const auto cat = fusion::resolve_category(p.get<std::string>("category", "fibonacci"));
    const double n = p.get<double>("n", 16.0);
    const auto dims = fusion::quantum_dimensions(cat);
    const auto fp = fusion::fusion_probabilities(cat, dims);
    const auto it = fusion::fixed_point_iterative(fp);
    const auto closed = fusion::closed_form_fixed_point(dims);
    const auto res = fusion::verify_fixed_point_identity(fp, it.p_star);
    double agree = 0.0;
    for (fusion::Label a = 0; a < cat.size(); ++a) agree = std::max(agree, std::abs(it.p_star[a] - closed[a]));
    const double K = fusion::bound_constant_K(it.p_star, cat.size());

    json r;
    r["category"] = cat.name();
    r["labels"] = cat.labels();
    r["abelian"] = cat.is_abelian();
    json d = json::object();
    for (fusion::Label a = 0; a < cat.size(); ++a) d[cat.label(a)] = dims[a];
    r["quantum_dimensions"] = d;
    r["total_dimension"] = dims.total;
    r["log_total_dimension"] = ctx.show(std::log(dims.total));
    r["p_star"] = it.p_star.values();
    r["p_star_closed_form"] = closed.values();
    r["iterations"] = it.iterations;
    r["residual"] = {{"max", res.max}, {"a", cat.label(res.a)}, {"b", cat.label(res.b)}};
    r["K"] = K;
    r["n"] = n;
    r["lower_bound"] = ctx.show(fusion::tee_lower_bound(cat.unit(), it.p_star, n, K));
    ctx.check("fixed_point_residual", res.max < 1e-12, -res.max);
    ctx.check("closed_form_agreement", agree < 1e-10, -agree);
    return r;
}

// ---------------------------------------------------------------------------
// ring

inline ring::RingSpec ring_spec(const Params &p) {
    ring::RingSpec s;
    s.q = p.get<int>("q", 2);
    s.sites_A = p.get<int>("sites_A", 2);
    s.sites_B1 = p.get<int>("sites_B1", 2);
    s.sites_C = p.get<int>("sites_C", 2);
    s.sites_B2 = p.get<int>("sites_B2", 2);
    const int n = p.get<int>("n", 0);
    s.a_depth = p.get<int>("a_depth", n > 0 ? 2 * (n + 1) + 1 : 1);
    s.validate();
    return s;
}

inline json run_ring(const Params &p, Context &ctx) {
    const ring::RingSpec spec = ring_spec(p);
    const int n = p.get<int>("n", 0);
    const auto cmi = ring::counting_cmi(spec);
    const double I = cmi.nats();
    const double logA = std::log(static_cast<double>(spec.q));
    json r;
    r["q"] = spec.q;
    r["sites"] = {{"A", spec.sites_A}, {"B1", spec.sites_B1}, {"C", spec.sites_C}, {"B2", spec.sites_B2}};
    r["a_depth"] = spec.a_depth;
    r["entropy_units"] = {{"AB", cmi.ab.units}, {"BC", cmi.bc.units}, {"B", cmi.b.units}, {"ABC", cmi.abc.units}};
    r["I"] = ctx.show(I);
    r["gamma"] = ctx.show(I / 2.0);
    r["log_A"] = ctx.show(logA);
    ctx.check_margin("abelian_saturation", I - logA, 1e-12, "I - log|A|");
    ctx.check("abelian_equality", cmi.units() == 1, -std::abs(I - logA));

    const bool small = std::pow(static_cast<double>(spec.q), spec.columns() - 1) <= 1e6;
    if (p.get<bool>("enumerate", small)) {
        double worst = 0.0;
        json per = json::object();
        for (int a = 0; a < spec.q; ++a) {
            const double e = ring::enumerated_cmi(spec, a);
            per[std::to_string(a)] = ctx.show(e);
            worst = std::max(worst, std::abs(e - I));
        }
        r["enumerated_I"] = per;
        ctx.check("enumeration_agreement", worst < 1e-12, -worst);
    }
    if (n > 0) {
        const AuditTrace t = ring::nested_annulus_table(spec, n);
        if (p.has("trace_out")) write_text(p.require<std::string>("trace_out"), trace_to_json(t).dump(2) + "\n");
        r["trace"] = trace_to_json(t);
        r["audit"] = audit_json(audit::audit_chain(t), ctx, "audit.");
    }
    return r;
}

// ---------------------------------------------------------------------------
// stabilizer

struct StabilizerSetup {
    toric::Lattice lattice;
    toric::AnnulusSpec spec;
};

inline StabilizerSetup stabilizer_setup(const Params &p) {
    const int prime = p.get<int>("p", 2);
    const int w = p.get<int>("widths", 2);
    const int n = p.get<int>("n", 0);
    const int wa = p.get<int>("width_a", std::max(w, n + 2)), wb = p.get<int>("width_b", w), wc = p.get<int>("width_c", w);
    const int ell = p.get<int>("ell", 2);
    const int hole = 2 * ell + 2;
    const int auto_w = std::max(12, 2 + 2 * wb + hole);
    const int auto_h = std::max(12, 2 + wa + wc + hole);
    const int size_w = p.get<int>("width", p.get<int>("size", auto_w));
    const int size_h = p.get<int>("height", p.get<int>("size", auto_h));
    toric::Lattice lat(size_w, size_h, prime);
    return {lat, toric::AnnulusSpec::centred(size_w, size_h, wb, wa, wc, ell)};
}

inline toric::SectorLabel parse_sector(const std::string &s, int p) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return toric::SectorLabel::from_index(std::stoul(s), p);
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception &) {
        throw ConfigError("sector must be 'e,m' or an index, got '" + s + "'");
    }
}

inline json region_json(const stab::RegionEntropy &e) {
    return {{"units", e.units},
            {"region_size", e.region_size},
            {"stabilizer_dim", e.stabilizer_dim},
            {"rank_total", e.rank_total},
            {"rank_complement", e.rank_complement}};
}

inline json run_stabilizer(const Params &p, Context &ctx) {
    const StabilizerSetup setup = stabilizer_setup(p);
    const toric::Lattice &lat = setup.lattice;
    const toric::AnnulusPartition part(lat, setup.spec);
    const int prime = lat.p();
    const auto states = toric::all_sector_states(lat, part);
    std::vector<toric::SectorLabel> sectors;
    if (p.get<bool>("all_sectors", false)) sectors = toric::all_sectors(prime);
    else sectors.push_back(parse_sector(p.get<std::string>("sector", "0,0"), prime));

    json r;
    r["p"] = prime;
    r["lattice"] = {{"width", lat.width()}, {"height", lat.height()}, {"edges", lat.edges()}};
    r["annulus"] = {{"width_a", setup.spec.width_a}, {"width_b", setup.spec.width_b}, {"width_c", setup.spec.width_c},
                    {"hole", {setup.spec.hole_w, setup.spec.hole_h}},
                    {"origin", {part.origin().first, part.origin().second}}};
    const double log_d = std::log(static_cast<double>(prime));
    r["log_total_dimension"] = ctx.show(log_d);
    json rows = json::array();
    std::optional<long> first_units;
    bool independent = true;
    for (const auto &a : sectors) {
        const auto &st = states.at(a);
        const auto terms = toric::annulus_cmi_terms(st, part);
        const std::string name = "(" + std::to_string(a.e) + "," + std::to_string(a.m) + ")";
        json row;
        row["sector"] = name;
        row["entropies"] = {{"AB", region_json(terms.ab)}, {"BC", region_json(terms.bc)}, {"B", region_json(terms.b)},
                            {"ABC", region_json(terms.abc)}};
        row["I_units"] = terms.units();
        row["I"] = ctx.show(terms.nats());
        row["gamma"] = ctx.show(terms.nats() / 2.0);
        rows.push_back(row);
        ctx.check("cmi_exact" + name, terms.units() == 2, static_cast<double>(terms.units() - 2) * log_d,
                  "I = " + std::to_string(terms.units()) + " log p");
        ctx.check_margin("tee_bound" + name, terms.nats() / 2.0 - log_d, 1e-12, "gamma - log D");
        if (!first_units) first_units = terms.units();
        independent = independent && *first_units == terms.units();
    }
    r["sectors"] = rows;
    ctx.check("sector_independence", independent, 0.0);

    if (p.get<bool>("verify", true)) {
        const auto rep = toric::verify_assumptions(states, lat, part);
        json v;
        v["property1"] = rep.property1;
        v["property2"] = rep.property2;
        v["property3"] = rep.property3;
        json viol = json::array();
        for (const auto &x : rep.violations)
            viol.push_back({{"property", x.property}, {"sectors", x.sectors}, {"witness", x.witness}});
        v["violations"] = viol;
        r["assumptions"] = v;
        ctx.check("property1", rep.property1, 0.0);
        ctx.check("property2", rep.property2, 0.0);
        ctx.check("property3", rep.property3, 0.0);
    }
    const int n = p.get<int>("n", 0);
    if (n > 0) {
        const AuditTrace t = toric::nested_annulus_table(states, lat, part, n);
        if (p.has("trace_out")) write_text(p.require<std::string>("trace_out"), trace_to_json(t).dump(2) + "\n");
        r["trace"] = trace_to_json(t);
        r["audit"] = audit_json(audit::audit_chain(t), ctx, "audit.");
    }
    return r;
}

// ---------------------------------------------------------------------------
// audit

inline json run_audit(const Params &p, Context &ctx) {
    const std::string path = p.require<std::string>("trace");
    if (!std::filesystem::exists(path)) throw ConfigError("trace file '" + path + "' does not exist");
    const AuditTrace t = load_trace(path);
    audit::AuditOptions opts;
    if (p.has("eps")) opts.eps = p.require<double>("eps");
    if (p.has("alpha")) opts.alpha = p.require<double>("alpha");
    if (p.has("b")) {
        const auto b = p.require<std::string>("b");
        auto it = std::find(t.labels.begin(), t.labels.end(), b);
        if (it == t.labels.end()) throw ConfigError("label '" + b + "' is not in the trace");
        opts.b = static_cast<fusion::Label>(it - t.labels.begin());
    }
    return audit_json(audit::audit_chain(t, opts), ctx, "");
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    std::string parameters;
    double I = 0.0, gamma = 0.0, bound = 0.0, margin = 0.0;
    bool pass = false;
    std::string error;
};

inline std::size_t thread_count() {
    if (const char *env = std::getenv("TEELAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception &) {
        }
        throw ConfigError("TEELAB_THREADS must be a positive integer");
    }
    return 1;
}

inline std::vector<SweepRow> run_grid(const std::vector<std::function<SweepRow()>> &jobs) {
    std::vector<SweepRow> rows(jobs.size());
    auto work = [&](std::size_t i) {
        try {
            rows[i] = jobs[i]();
        } catch (const std::exception &e) {
            rows[i].error = e.what();
            rows[i].pass = false;
        }
    };
    const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(jobs.size(), 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
        return rows;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < jobs.size(); i += threads) work(i);
        });
    for (auto &th : pool) th.join();
    return rows;
}

inline json run_sweep(const Params &p, Context &ctx) {
    const std::string target = p.get<std::string>("target", "stabilizer");
    std::vector<std::function<SweepRow()>> jobs;
    std::vector<std::string> labels;
    if (target == "stabilizer") {
        for (int prime : p.list<int>("p", {2, 3, 5}))
            for (int w : p.list<int>("widths", {2, 3})) {
                json point = {{"p", prime}, {"widths", w}, {"all_sectors", true}, {"verify", false}};
                jobs.push_back([point, prime, w] {
                    const StabilizerSetup setup = stabilizer_setup(Params(point));
                    const toric::AnnulusPartition part(setup.lattice, setup.spec);
                    const auto states = toric::all_sector_states(setup.lattice, part);
                    SweepRow row;
                    row.parameters = "p=" + std::to_string(prime) + ";widths=" + std::to_string(w);
                    row.I = std::numeric_limits<double>::infinity();
                    for (const auto &[a, st] : states) row.I = std::min(row.I, toric::annulus_cmi(st, part));
                    row.bound = 2.0 * std::log(static_cast<double>(prime));
                    return row;
                });
            }
    } else if (target == "ring") {
        for (int q : p.list<int>("q", {2, 3, 4, 5})) {
            json point = p.has("sites") ? json{{"q", q}, {"sites_A", p.require<int>("sites")},
                                               {"sites_B1", p.require<int>("sites")},
                                               {"sites_C", p.require<int>("sites")},
                                               {"sites_B2", p.require<int>("sites")}}
                                        : json{{"q", q}};
            jobs.push_back([point, q] {
                const ring::RingSpec spec = ring_spec(Params(point));
                SweepRow row;
                row.parameters = "q=" + std::to_string(q);
                row.I = ring::exact_cmi(spec);
                row.bound = std::log(static_cast<double>(q));
                return row;
            });
        }
    } else if (target == "audit") {
        const int lo = p.get<int>("n_min", 1), hi = p.get<int>("n_max", 16);
        if (lo < 1 || hi < lo) throw ConfigError("need 1 <= n_min <= n_max");
        const auto cat = fusion::resolve_category(p.get<std::string>("category", "toric_code"));
        for (int n = lo; n <= hi; ++n) {
            jobs.push_back([cat, n] {
                const auto dims = fusion::quantum_dimensions(cat);
                const auto pstar = fusion::closed_form_fixed_point(dims);
                SweepRow row;
                row.parameters = "n=" + std::to_string(n);
                row.I = 2.0 * std::log(dims.total);
                row.bound = fusion::tee_lower_bound(cat.unit(), pstar, n, fusion::bound_constant_K(pstar, cat.size()));
                return row;
            });
        }
    } else {
        throw ConfigError("sweep target must be stabilizer, ring or audit");
    }

    std::vector<SweepRow> rows = run_grid(jobs);
    std::ostringstream csv;
    csv << "parameters,I,gamma,bound,margin\n";
    csv << std::setprecision(17);
    json out = json::array();
    for (auto &row : rows) {
        if (row.error.empty()) {
            row.gamma = row.I / 2.0;
            row.margin = row.I - row.bound;
            row.pass = row.margin >= -1e-12;
        }
        csv << row.parameters << ',' << ctx.show(row.I) << ',' << ctx.show(row.gamma) << ',' << ctx.show(row.bound)
            << ',' << ctx.show(row.margin) << '\n';
        json j = {{"parameters", row.parameters}, {"I", ctx.show(row.I)}, {"gamma", ctx.show(row.gamma)},
                  {"bound", ctx.show(row.bound)}, {"margin", ctx.show(row.margin)}, {"pass", row.pass}};
        if (!row.error.empty()) j["error"] = row.error;
        out.push_back(j);
        ctx.check("sweep[" + row.parameters + "]", row.pass, row.margin, row.error);
    }
    ctx.csv = csv.str();
    if (p.has("csv")) write_text(p.require<std::string>("csv"), ctx.csv);
    return {{"target", target}, {"rows", out}};
}

// ---------------------------------------------------------------------------
// selftest

inline json run_selftest(const Params &, Context &ctx) {
    json r = json::object();
    for (const auto &cat : fusion::bundled_categories()) {
        Context sub = ctx;
        sub.checks.clear();
        json one = run_fusion(Params(json{{"category", cat.name()}}), sub);
        for (auto &c : sub.checks) ctx.check("fusion." + cat.name() + "." + c.name, c.pass, c.margin, c.detail);
        r["fusion"][cat.name()] = one["residual"]["max"];

        const auto dims = fusion::quantum_dimensions(cat);
        const auto fp = fusion::fusion_probabilities(cat, dims);
        const auto pstar = fusion::closed_form_fixed_point(dims);
        const auto sweep = audit::taylor_bound_sweep(pstar, fp, audit::eps_grid(pstar.min(), 41));
        ctx.check("taylor." + cat.name(), sweep.pass(), std::min({sweep.taylor.margin, sweep.concavity.margin,
                                                                   sweep.combined.margin}));
    }
    for (int q : {2, 3, 5}) {
        Context sub = ctx;
        sub.checks.clear();
        r["ring"][std::to_string(q)] = run_ring(Params(json{{"q", q}, {"n", 2}}), sub)["I"];
        for (auto &c : sub.checks) ctx.check("ring.q" + std::to_string(q) + "." + c.name, c.pass, c.margin, c.detail);
    }
    {
        Context sub = ctx;
        sub.checks.clear();
        json s = run_stabilizer(Params(json{{"p", 2}, {"size", 12}, {"widths", 2}, {"all_sectors", true}}), sub);
        r["stabilizer"] = s["sectors"];
        for (auto &c : sub.checks) ctx.check("stabilizer." + c.name, c.pass, c.margin, c.detail);
    }
    return r;
}

}  // namespace detail

/// Reads a config document: {"scenario": ..., "params": {...}, "output": ...,
/// "units": ...}. Without a "params" object every other key is a parameter.
inline ScenarioConfig load_config(const std::string &path, ScenarioConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config document must be an object");
    if (doc.contains("scenario")) {
        const auto kind = doc["scenario"].get<std::string>();
        if (!base.kind.empty() && base.kind != kind) throw ConfigError("config is for scenario '" + kind + "'");
        base.kind = kind;
    }
    if (doc.contains("output")) base.output = doc["output"].get<std::string>();
    if (doc.contains("units")) base.units = doc["units"].get<std::string>();
    if (doc.contains("timings")) base.timings = doc["timings"].get<bool>();
    if (doc.contains("params")) {
        base.params = doc["params"];
    } else {
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (it.key() != "scenario" && it.key() != "output" && it.key() != "units" && it.key() != "timings")
                base.params[it.key()] = it.value();
    }
    return base;
}

/// Runs a scenario in process. ConfigError and MalformedInput propagate (exit
/// code 2); other library errors propagate as well and map to exit code 1.
inline RunReport run(const ScenarioConfig &cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::Context ctx(cfg);
    const Params params(cfg.params);
    json results;
    if (cfg.kind == "fusion") results = detail::run_fusion(params, ctx);
    else if (cfg.kind == "ring") results = detail::run_ring(params, ctx);
    else if (cfg.kind == "stabilizer") results = detail::run_stabilizer(params, ctx);
    else if (cfg.kind == "audit") results = detail::run_audit(params, ctx);
    else if (cfg.kind == "sweep") results = detail::run_sweep(params, ctx);
    else if (cfg.kind == "selftest") results = detail::run_selftest(params, ctx);
    else throw ConfigError("unknown scenario '" + cfg.kind + "'");

    RunReport out;
    out.checks = ctx.checks;
    out.csv = ctx.csv;
    json &rep = out.report;
    rep["tool"] = "teelab";
    rep["version"] = kVersion;
    rep["scenario"] = cfg.kind;
    rep["config"] = cfg.params;
    rep["units"] = cfg.units;
    rep["input_hash"] = fnv1a(json{{"scenario", cfg.kind}, {"params", cfg.params}, {"units", cfg.units}}.dump());
    rep["results"] = results;
    json checks = json::array();
    for (const auto &c : out.checks) {
        json cj = {{"name", c.name}, {"pass", c.pass}};
        cj["margin"] = std::isfinite(c.margin) ? json(ctx.show(c.margin)) : json(nullptr);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    rep["checks"] = checks;
    rep["pass"] = out.pass();
    if (cfg.timings) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep["timings"] = {{"total_seconds", secs}};
    }
    return out;
}

}  // namespace teelab::cli
