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

// Replay of the lower-bound argument as arithmetic on a table
// I_i^(a) = I(A_i:C|B) over nested annuli i = 0..n+1.
//
// Lemma names used in reports:
//   paIa         sum_a p_a I_i^a >= H(p)
//   fusion_step  sum_a p_a I_{i+1}^a - H(p) >= sum_a p_{a,s} I_i^a - H(p_{.,s})
//   cor1         I_{i+1}^b >= I_i^b
//   cor2         I_{i+1}^b >= sum_a p*_a I_i^a - log|A|
//   cor3         sum_a p*_a (I_{i+1}^a - I_i^a) >= eps P [I_i^c - I_i^b + log(p*_c/p*_b)] - 2 eps^2
//   cor4         the same with the bracket averaged over c: eps P delta_i^b - 2 eps^2
//   cor5         sum_a p*_a I_n^a >= sum_i (eps P delta_i^b - 2 eps^2)
//   cor6         I_{n+1}^b >= sum_i (eps P delta_i^b - 2 eps^2) - log|A|
//   cor7         I_{n+1}^b >= log(1/p*_b) - delta_i^b
// where P = min_a p*_a and delta_i^b = sum_a p*_a [I_i^a - I_i^b + log(p*_a/p*_b)].

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "teelab/error.hpp"
#include "teelab/fusion.hpp"
#include "teelab/trace.hpp"

namespace teelab::audit {

using fusion::AnyonDistribution;
using fusion::Label;

inline constexpr double kFloor = 1e-9;

enum class Status { Pass, NumericalFloor, Fail, NotEvaluated };

inline const char *status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::NumericalFloor: return "pass (numerical-floor)";
        case Status::Fail: return "fail";
        case Status::NotEvaluated: return "not evaluated";
    }
    return "?";
}

inline Status classify(double margin) {
    if (margin >= 0.0) return Status::Pass;
    if (margin >= -kFloor) return Status::NumericalFloor;
    return Status::Fail;
}

inline bool passed(Status s) {
    return s == Status::Pass || s == Status::NumericalFloor;
}

// ---------------------------------------------------------------------------
// Single lemmas

/// sum_a p_a I_i^a - H(p).
inline double check_paIa(const AuditTrace &t, std::size_t level, const AnyonDistribution &p) {
    if (p.size() != t.labels.size()) throw MalformedInput("distribution does not match the trace labels");
    double avg = 0.0;
    for (Label a = 0; a < p.size(); ++a) avg += p[a] * t.I(a, level);
    return avg - fusion::shannon_entropy(p);
}

/// p_{a,s} = sum_b p_b p_{s x b -> a}.
inline std::vector<double> fused_distribution(const fusion::FusionProbabilities &fp, const std::vector<double> &p,
                                              Label s) {
    std::vector<double> out(p.size(), 0.0);
    for (Label a = 0; a < p.size(); ++a)
        for (Label b = 0; b < p.size(); ++b) out[a] += p[b] * fp(s, b, a);
    return out;
}

/// LHS - RHS of the fusion step from level i to level i + 1.
inline double check_fusion_step(const AuditTrace &t, std::size_t level, const AnyonDistribution &p, Label s) {
    if (level + 1 >= t.levels()) throw MalformedInput("fusion step needs levels i and i+1");
    if (p.size() != t.labels.size()) throw MalformedInput("distribution does not match the trace labels");
    const auto ps = fused_distribution(t.fp, p.values(), s);
    double lhs = -fusion::shannon_entropy(p), rhs = -fusion::shannon_entropy(ps);
    for (Label a = 0; a < p.size(); ++a) {
        lhs += p[a] * t.I(a, level + 1);
        rhs += ps[a] * t.I(a, level);
    }
    return lhs - rhs;
}

/// LHS - RHS of cor3 for labels b, c between levels i and i + 1.
inline double check_cor3(const AuditTrace &t, std::size_t level, Label b, Label c, double eps) {
    if (level + 1 >= t.levels()) throw MalformedInput("cor3 needs levels i and i+1");
    const double pmin = t.p_star.min();
    if (std::abs(eps) > pmin / 2.0 + 1e-15) {
        std::ostringstream os;
        os << "|eps| = " << std::abs(eps) << " exceeds min p*/2 = " << pmin / 2.0;
        throw EpsilonOutOfRange(os.str());
    }
    double lhs = 0.0;
    for (Label a = 0; a < t.labels.size(); ++a) lhs += t.p_star[a] * (t.I(a, level + 1) - t.I(a, level));
    const double bracket = t.I(c, level) - t.I(b, level) + std::log(t.p_star[c] / t.p_star[b]);
    return lhs - (eps * pmin * bracket - 2.0 * eps * eps);
}

/// delta_i^b.
inline double delta(const AuditTrace &t, std::size_t level, Label b) {
    double d = 0.0;
    for (Label a = 0; a < t.labels.size(); ++a)
        d += t.p_star[a] * (t.I(a, level) - t.I(b, level) + std::log(t.p_star[a] / t.p_star[b]));
    return d;
}

// ---------------------------------------------------------------------------
// Reports

struct Check {
    std::string name;
    Status status = Status::NotEvaluated;
    double margin = std::numeric_limits<double>::quiet_NaN();  // worst margin, nats
    std::string where;                                         // cell of the worst margin
    bool premise = false;
};

struct AuditOptions {
    std::optional<double> eps;
    std::optional<double> alpha;
    std::optional<Label> b;  // label of the final inequality; default a0
};

struct AuditReport {
    std::vector<Check> checks;
    double eps = 0.0, alpha = 0.0, pmin = 0.0, K = 0.0;
    std::size_t n = 0;
    Label b = 0;
    double I_final = 0.0;         // I_{n+1}^b
    double bound_assembled = 0.0; // alpha-combination of cor6 and cor7
    double bound_closed = 0.0;    // log(1/p_b) - alpha [2 n eps^2 + log(|A|/p_b)]
    double bound_final = 0.0;     // log(1/p*_b) - K / sqrt(n)
    double gap = 0.0;             // I_final - bound_final
    std::string provenance;

    const Check &check(const std::string &name) const {
        for (const auto &c : checks)
            if (c.name == name) return c;
        throw MalformedInput("no check named " + name);
    }
    bool pass() const {
        for (const auto &c : checks)
            if (!passed(c.status)) return false;
        return true;
    }
    /// First failing premise, if any.
    std::optional<std::string> failed_premise() const {
        for (const auto &c : checks)
            if (c.premise && c.status == Status::Fail) return c.name;
        return std::nullopt;
    }
};

namespace detail {

struct Worst {
    double margin = std::numeric_limits<double>::infinity();
    std::string where;
    void add(double m, const std::string &w) {
        if (m < margin) {
            margin = m;
            where = w;
        }
    }
    Check finish(std::string name, bool premise) const {
        return Check{std::move(name), classify(margin), margin, where, premise};
    }
};

inline std::string cell(std::size_t level, const std::string &extra = "") {
    std::ostringstream os;
    os << "level " << level;
    if (!extra.empty()) os << ", " << extra;
    return os.str();
}

}  // namespace detail

/// Evaluates every lemma and the assembled bound. A failed premise marks the
/// downstream checks as not evaluated; nothing is thrown for failed checks.
inline AuditReport audit_chain(const AuditTrace &t, const AuditOptions &opts = {}) {
    t.validate();
    const std::size_t k = t.labels.size();
    const std::size_t L = t.levels();
    const std::size_t n = t.n();
    AuditReport r;
    r.n = n;
    r.provenance = t.provenance;
    r.b = opts.b.value_or(t.a0);
    if (r.b >= k) throw MalformedInput("label of the final inequality out of range");
    r.pmin = t.p_star.min();
    if (!(r.pmin > 0.0)) throw DegenerateDistribution("p* has a zero entry");
    r.K = fusion::bound_constant_K(t.p_star, k);
    r.eps = opts.eps.value_or(r.pmin / (2.0 * std::sqrt(static_cast<double>(n))));
    if (std::abs(r.eps) > r.pmin / 2.0 + 1e-15) throw EpsilonOutOfRange("eps outside |eps| <= min p*/2");
    r.alpha = opts.alpha.value_or(1.0 / (static_cast<double>(n) * r.pmin * r.eps + 1.0));
    if (!(r.alpha >= 0.0 && r.alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    const Label b = r.b;

    std::vector<AnyonDistribution> dists{t.p_star, AnyonDistribution::uniform(k)};
    for (Label a = 0; a < k; ++a) dists.push_back(AnyonDistribution::point_mass(k, a));

    bool ok = true;
    auto push = [&](Check c) {
        if (!ok) {
            c.status = Status::NotEvaluated;
            c.margin = std::numeric_limits<double>::quiet_NaN();
            c.where.clear();
        }
        if (c.premise && c.status == Status::Fail) ok = false;
        r.checks.push_back(std::move(c));
    };

    {
        detail::Worst w;
        for (std::size_t i = 0; i < L; ++i) {
            w.add(check_paIa(t, i, dists[0]), detail::cell(i, "p = p*"));
            w.add(check_paIa(t, i, dists[1]), detail::cell(i, "p = uniform"));
        }
        push(w.finish("paIa", true));
    }
    {
        detail::Worst w;
        for (std::size_t i = 0; i + 1 < L; ++i)
            for (Label a = 0; a < k; ++a) w.add(t.I(a, i + 1) - t.I(a, i), detail::cell(i, "b = " + t.labels[a]));
        push(w.finish("cor1", true));
    }
    {
        detail::Worst w;
        const double logA = std::log(static_cast<double>(k));
        for (std::size_t i = 0; i + 1 < L; ++i) {
            double avg = 0.0;
            for (Label a = 0; a < k; ++a) avg += t.p_star[a] * t.I(a, i);
            for (Label a = 0; a < k; ++a) w.add(t.I(a, i + 1) - (avg - logA), detail::cell(i, "b = " + t.labels[a]));
        }
        push(w.finish("cor2", true));
    }
    {
        detail::Worst w;
        for (std::size_t i = 0; i + 1 < L; ++i)
            for (std::size_t d = 0; d < dists.size(); ++d)
                for (Label s = 0; s < k; ++s) {
                    const std::string tag = d == 0 ? "p*" : d == 1 ? "uniform" : "delta_" + t.labels[d - 2];
                    w.add(check_fusion_step(t, i, dists[d], s), detail::cell(i, "p = " + tag + ", s = " + t.labels[s]));
                }
        push(w.finish("fusion_step", true));
    }
    {
        detail::Worst w;
        for (std::size_t i = 0; i < n; ++i)
            for (Label bb = 0; bb < k; ++bb)
                for (Label c = 0; c < k; ++c)
                    w.add(check_cor3(t, i, bb, c, r.eps),
                          detail::cell(i, "b = " + t.labels[bb] + ", c = " + t.labels[c]));
        push(w.finish("cor3", true));
    }

    // Assembly for the label b.
    const double eps = r.eps, pm = r.pmin, alpha = r.alpha;
    const double logA = std::log(static_cast<double>(k));
    const double log_inv_pb = -std::log(t.p_star[b]);
    double sum_terms = 0.0;
    std::vector<double> deltas(n);
    {
        detail::Worst w;
        for (std::size_t i = 0; i < n; ++i) {
            deltas[i] = delta(t, i, b);
            double lhs = 0.0;
            for (Label a = 0; a < k; ++a) lhs += t.p_star[a] * (t.I(a, i + 1) - t.I(a, i));
            const double term = eps * pm * deltas[i] - 2.0 * eps * eps;
            sum_terms += term;
            w.add(lhs - term, detail::cell(i));
        }
        push(w.finish("cor4", false));
    }
    {
        double avg_n = 0.0;
        for (Label a = 0; a < k; ++a) avg_n += t.p_star[a] * t.I(a, n);
        detail::Worst w;
        w.add(avg_n - sum_terms, detail::cell(n));
        push(w.finish("cor5", false));
    }
    r.I_final = t.I(b, n + 1);
    const double cor6_rhs = sum_terms - logA;
    {
        detail::Worst w;
        w.add(r.I_final - cor6_rhs, detail::cell(n + 1, "b = " + t.labels[b]));
        push(w.finish("cor6", false));
    }
    double cor7_avg = 0.0;
    {
        detail::Worst w;
        for (std::size_t i = 0; i < n; ++i) {
            w.add(r.I_final - (log_inv_pb - deltas[i]), detail::cell(i, "b = " + t.labels[b]));
            cor7_avg += (log_inv_pb - deltas[i]) / static_cast<double>(n);
        }
        push(w.finish("cor7", false));
    }
    r.bound_assembled = alpha * cor6_rhs + (1.0 - alpha) * cor7_avg;
    r.bound_closed = log_inv_pb - alpha * (2.0 * static_cast<double>(n) * eps * eps + std::log(static_cast<double>(k) / t.p_star[b]));
    r.bound_final = log_inv_pb - r.K / std::sqrt(static_cast<double>(n));
    r.gap = r.I_final - r.bound_final;
    {
        detail::Worst w;
        w.add(r.I_final - r.bound_assembled, "alpha-combination");
        push(w.finish("combination", false));
    }
    if (!opts.alpha) {
        const double defect = std::abs(r.bound_assembled - r.bound_closed);
        push(Check{"closed_form", defect <= kFloor ? Status::Pass : Status::Fail, -defect, "delta cancellation", false});
    }
    if (!opts.eps && !opts.alpha) {
        detail::Worst w;
        w.add(r.bound_closed - r.bound_final, "alpha <= 2/(P^2 sqrt n)");
        push(w.finish("eps_substitution", false));
    }
    {
        detail::Worst w;
        w.add(r.gap, "I_{n+1}^" + t.labels[b] + " vs log(1/p*) - K/sqrt(n)");
        push(w.finish("final", false));
    }
    return r;
}

/// audit_chain that raises PremiseViolated naming the first failed lemma.
inline AuditReport assemble_bound(const AuditTrace &t, const AuditOptions &opts = {}) {
    AuditReport r = audit_chain(t, opts);
    if (auto name = r.failed_premise()) {
        const Check &c = r.check(*name);
        std::ostringstream os;
        os << *name << " fails at " << c.where << " with margin " << c.margin;
        throw PremiseViolated(os.str());
    }
    return r;
}

inline nlohmann::json report_to_json(const AuditReport &r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["b"] = r.b;
    j["eps"] = r.eps;
    j["alpha"] = r.alpha;
    j["pmin"] = r.pmin;
    j["K"] = r.K;
    j["I_final"] = r.I_final;
    j["bound_assembled"] = r.bound_assembled;
    j["bound_closed"] = r.bound_closed;
    j["bound_final"] = r.bound_final;
    j["gap"] = r.gap;
    j["provenance"] = r.provenance;
    j["pass"] = r.pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["status"] = status_name(c.status);
        cj["premise"] = c.premise;
        if (std::isfinite(c.margin)) cj["margin"] = c.margin;
        else cj["margin"] = nullptr;
        cj["where"] = c.where;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

// ---------------------------------------------------------------------------
// Entropy bounds on perturbed fixed points

struct SweepCell {
    double margin = std::numeric_limits<double>::infinity();
    Label b = 0, c = 0;
    double eps = 0.0;
};

struct TaylorSweepReport {
    SweepCell taylor;     // H(p) - [H(p*) + eps log(p*_c/p*_b) - 2 eps^2 / P]
    SweepCell concavity;  // H(p*) - sum_s p*_s H(p_{.,s})
    SweepCell combined;   // H(p) - sum_s p*_s H(p_{.,s}) - [eps log(p*_c/p*_b) - 2 eps^2 / P]
    std::size_t evaluations = 0;
    bool pass() const {
        return taylor.margin >= -kFloor && concavity.margin >= -kFloor && combined.margin >= -kFloor;
    }
};

/// `points` values of eps evenly spaced on [-P/2, P/2].
inline std::vector<double> eps_grid(double pmin, std::size_t points = 41) {
    if (points < 2) return {0.0};
    std::vector<double> g;
    for (std::size_t i = 0; i < points; ++i)
        g.push_back(-pmin / 2.0 + pmin * static_cast<double>(i) / static_cast<double>(points - 1));
    return g;
}

inline TaylorSweepReport taylor_bound_sweep(const AnyonDistribution &p_star, const fusion::FusionProbabilities &fp,
                                            const std::vector<double> &grid) {
    const std::size_t k = p_star.size();
    if (fp.size() != k) throw MalformedInput("fusion probabilities do not match p*");
    const double pmin = p_star.min();
    if (!(pmin > 0.0)) throw DegenerateDistribution("p* has a zero entry");
    for (double e : grid)
        if (std::abs(e) > pmin / 2.0 + 1e-15) throw EpsilonOutOfRange("eps grid exceeds min p*/2");
    const double h_star = fusion::shannon_entropy(p_star);
    TaylorSweepReport rep;
    auto upd = [](SweepCell &cell, double m, Label b, Label c, double e) {
        if (m < cell.margin) cell = {m, b, c, e};
    };
    for (Label b = 0; b < k; ++b)
        for (Label c = 0; c < k; ++c)
            for (double e : grid) {
                std::vector<double> p = p_star.values();
                p[b] += e;
                p[c] -= e;
                const double hp = fusion::shannon_entropy(p);
                double avg_h = 0.0;
                for (Label s = 0; s < k; ++s) avg_h += p_star[s] * fusion::shannon_entropy(fused_distribution(fp, p, s));
                const double lin = e * std::log(p_star[c] / p_star[b]) - 2.0 * e * e / pmin;
                upd(rep.taylor, hp - (h_star + lin), b, c, e);
                upd(rep.concavity, h_star - avg_h, b, c, e);
                upd(rep.combined, hp - avg_h - lin, b, c, e);
                ++rep.evaluations;
            }
    return rep;
}

}  // namespace teelab::audit
