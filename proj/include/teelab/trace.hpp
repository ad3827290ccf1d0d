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

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "teelab/fusion.hpp"

namespace teelab {

/// Conditional mutual information I_i^(a) = I(A_i:C|B) of sector a over a
/// nested family of annuli A_0 BC ⊂ ... ⊂ A_{n+1} BC, with the fusion data
/// needed to replay the bound.
struct AuditTrace {
    std::vector<std::string> labels;
    /// table[a][i], nats.
    std::vector<std::vector<double>> table;
    fusion::FusionProbabilities fp;
    fusion::AnyonDistribution p_star;
    fusion::Label a0 = 0;
    std::string provenance = "synthetic";

    std::size_t levels() const {
        return table.empty() ? 0 : table.front().size();
    }
    /// Number of intermediate thinnings n (levels = n + 2).
    std::size_t n() const {
        return levels() >= 2 ? levels() - 2 : 0;
    }
    double I(fusion::Label a, std::size_t level) const {
        return table.at(a).at(level);
    }

    void validate() const {
        const std::size_t k = labels.size();
        if (k == 0) throw MalformedInput("trace has no labels");
        if (table.size() != k) throw MalformedInput("trace table does not have one row per label");
        for (const auto &row : table) {
            if (row.size() != table.front().size()) throw MalformedInput("trace table is not rectangular");
            for (double x : row)
                if (!(x >= -1e-9)) throw MalformedInput("trace contains a negative conditional mutual information");
        }
        if (levels() < 3) throw MalformedInput("trace needs at least three levels (n >= 1)");
        if (fp.size() != k) throw MalformedInput("fusion probabilities do not match the labels");
        if (p_star.size() != k) throw MalformedInput("p* does not match the labels");
        if (a0 >= k) throw MalformedInput("base label out of range");
    }
};

/// Trace for an Abelian group with multiplication `mul`, uniform p* and a
/// table filled with `value` everywhere.
template <typename Mul>
AuditTrace constant_group_trace(std::vector<std::string> labels, Mul mul, std::size_t levels, double value,
                                std::string provenance) {
    const std::size_t k = labels.size();
    std::vector<double> table(k * k * k, 0.0);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t a = 0; a < k; ++a) table[(s * k + a) * k + mul(s, a)] = 1.0;
    AuditTrace t;
    t.labels = std::move(labels);
    t.table.assign(k, std::vector<double>(levels, value));
    t.fp = fusion::FusionProbabilities(k, std::move(table));
    t.p_star = fusion::AnyonDistribution::uniform(k);
    t.provenance = std::move(provenance);
    return t;
}

inline nlohmann::json trace_to_json(const AuditTrace &t) {
    nlohmann::json j;
    j["labels"] = t.labels;
    j["levels"] = t.levels();
    j["I"] = t.table;
    const std::size_t k = t.labels.size();
    nlohmann::json fp = nlohmann::json::array();
    for (std::size_t s = 0; s < k; ++s) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t a = 0; a < k; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t b = 0; b < k; ++b) row.push_back(t.fp(s, a, b));
            rows.push_back(row);
        }
        fp.push_back(rows);
    }
    j["fusion_probabilities"] = fp;
    j["p_star"] = t.p_star.values();
    j["a0"] = t.labels.at(t.a0);
    j["provenance"] = t.provenance;
    return j;
}

inline AuditTrace trace_from_json(const nlohmann::json &j) {
    try {
        AuditTrace t;
        t.labels = j.at("labels").get<std::vector<std::string>>();
        t.table = j.at("I").get<std::vector<std::vector<double>>>();
        const std::size_t k = t.labels.size();
        const auto fp = j.at("fusion_probabilities").get<std::vector<std::vector<std::vector<double>>>>();
        if (fp.size() != k) throw MalformedInput("fusion_probabilities has the wrong size");
        std::vector<double> flat;
        for (const auto &rows : fp) {
            if (rows.size() != k) throw MalformedInput("fusion_probabilities has the wrong size");
            for (const auto &row : rows) {
                if (row.size() != k) throw MalformedInput("fusion_probabilities has the wrong size");
                flat.insert(flat.end(), row.begin(), row.end());
            }
        }
        t.fp = fusion::FusionProbabilities(k, std::move(flat));
        t.p_star = fusion::AnyonDistribution(j.at("p_star").get<std::vector<double>>(), 1e-9);
        const auto a0 = j.at("a0").get<std::string>();
        auto it = std::find(t.labels.begin(), t.labels.end(), a0);
        if (it == t.labels.end()) throw MalformedInput("a0 '" + a0 + "' is not a label");
        t.a0 = static_cast<fusion::Label>(it - t.labels.begin());
        t.provenance = j.value("provenance", std::string("synthetic"));
        if (j.contains("levels") && j["levels"].get<std::size_t>() != t.levels()) {
            throw MalformedInput("'levels' does not match the I table");
        }
        t.validate();
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw MalformedInput(std::string("malformed trace document: ") + e.what());
    }
}

inline AuditTrace load_trace(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open trace file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw MalformedInput("trace file " + path.string() + " is not valid JSON: " + e.what());
    }
    return trace_from_json(j);
}

}  // namespace teelab
