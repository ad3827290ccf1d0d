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

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "teelab/fusion.hpp"

namespace teelab::fusion {

// ---------------------------------------------------------------------------
// JSON documents
//
//   { "name": "ising",
//     "labels": ["1", "sigma", "psi"],
//     "unit": "1",                          (optional, default labels[0])
//     "dual": {"sigma": "sigma", ...},      (optional, inferred)
//     "N": {"sigma": {"sigma": {"1": 1, "psi": 1}}, ...} }
//
// Absent entries of N are zero.

inline FusionCategory category_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) throw MalformedInput("category document is not an object");
    if (!doc.contains("labels") || !doc["labels"].is_array()) throw MalformedInput("missing 'labels' array");
    if (!doc.contains("N") || !doc["N"].is_object()) throw MalformedInput("missing 'N' table");

    std::vector<std::string> labels;
    for (const auto &l : doc["labels"]) {
        if (!l.is_string()) throw MalformedInput("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    const std::size_t n = labels.size();
    if (n == 0) throw MalformedInput("'labels' is empty");
    auto index = [&](const std::string &s) -> Label {
        for (Label i = 0; i < n; ++i)
            if (labels[i] == s) return i;
        throw MalformedInput("unknown label '" + s + "'");
    };

    Label unit = 0;
    if (doc.contains("unit")) {
        if (!doc["unit"].is_string()) throw MalformedInput("'unit' must be a label");
        unit = index(doc["unit"].get<std::string>());
    }

    std::vector<int> mult(n * n * n, 0);
    for (const auto &[a, row] : doc["N"].items()) {
        if (!row.is_object()) throw MalformedInput("N['" + a + "'] is not an object");
        for (const auto &[b, cell] : row.items()) {
            if (!cell.is_object()) throw MalformedInput("N['" + a + "']['" + b + "'] is not an object");
            for (const auto &[c, value] : cell.items()) {
                if (!value.is_number_integer()) throw MalformedInput("multiplicities must be integers");
                mult[(index(a) * n + index(b)) * n + index(c)] = value.get<int>();
            }
        }
    }

    std::optional<std::vector<Label>> dual;
    if (doc.contains("dual") && !doc["dual"].is_null()) {
        if (!doc["dual"].is_object()) throw MalformedInput("'dual' must be an object");
        std::vector<Label> d(n, n);
        for (const auto &[a, b] : doc["dual"].items()) {
            if (!b.is_string()) throw MalformedInput("dual entries must be labels");
            d[index(a)] = index(b.get<std::string>());
        }
        for (Label x : d)
            if (x == n) throw MalformedInput("'dual' does not cover every label");
        dual = std::move(d);
    }
    const std::string name = doc.value("name", std::string("unnamed"));
    return FusionCategory::create(name, std::move(labels), unit, std::move(mult), std::move(dual));
}

inline nlohmann::json category_to_json(const FusionCategory &cat) {
    nlohmann::json doc;
    doc["name"] = cat.name();
    doc["labels"] = cat.labels();
    doc["unit"] = cat.label(cat.unit());
    nlohmann::json dual = nlohmann::json::object();
    for (Label a = 0; a < cat.size(); ++a) dual[cat.label(a)] = cat.label(cat.dual(a));
    doc["dual"] = dual;
    nlohmann::json N = nlohmann::json::object();
    for (Label a = 0; a < cat.size(); ++a)
        for (Label b = 0; b < cat.size(); ++b)
            for (Label c = 0; c < cat.size(); ++c)
                if (int m = cat.N(a, b, c)) N[cat.label(a)][cat.label(b)][cat.label(c)] = m;
    doc["N"] = N;
    return doc;
}

/// Reads and validates a category file.
inline FusionCategory load_category(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open category file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw MalformedInput("category file " + path.string() + " is not valid JSON: " + e.what());
    }
    return category_from_json(doc);
}

// ---------------------------------------------------------------------------
// Built-in categories

/// Z_N with labels "0".."N-1" and addition mod N.
inline FusionCategory cyclic_category(std::size_t order) {
    if (order == 0) throw MalformedInput("cyclic group order must be positive");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < order; ++i) labels.push_back(std::to_string(i));
    std::vector<int> mult(order * order * order, 0);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) mult[(a * order + b) * order + (a + b) % order] = 1;
    return FusionCategory::create("Z" + std::to_string(order), std::move(labels), 0, std::move(mult));
}

/// Z_p x Z_p anyons of the qudit toric code, label (e, m) at index e * p + m.
/// For p = 2 the labels are 1, e, m, eps.
inline FusionCategory toric_code_category(std::size_t p = 2) {
    const std::size_t n = p * p;
    std::vector<std::string> labels;
    if (p == 2) {
        labels = {"1", "m", "e", "eps"};
    } else {
        for (std::size_t e = 0; e < p; ++e)
            for (std::size_t m = 0; m < p; ++m) labels.push_back("e" + std::to_string(e) + "m" + std::to_string(m));
    }
    std::vector<int> mult(n * n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t e = (a / p + b / p) % p;
            const std::size_t m = (a % p + b % p) % p;
            mult[(a * n + b) * n + e * p + m] = 1;
        }
    return FusionCategory::create(p == 2 ? "toric_code" : "toric_code_p" + std::to_string(p), std::move(labels), 0,
                                  std::move(mult));
}

inline FusionCategory ising_category() {
    // 1 = 0, sigma = 1, psi = 2
    std::vector<int> mult(27, 0);
    auto set = [&](int a, int b, int c) { mult[(a * 3 + b) * 3 + c] = 1; };
    for (int a = 0; a < 3; ++a) {
        set(0, a, a);
        if (a != 0) set(a, 0, a);
    }
    set(1, 1, 0);
    set(1, 1, 2);
    set(1, 2, 1);
    set(2, 1, 1);
    set(2, 2, 0);
    return FusionCategory::create("ising", {"1", "sigma", "psi"}, 0, std::move(mult));
}

inline FusionCategory fibonacci_category() {
    std::vector<int> mult(8, 0);
    auto set = [&](int a, int b, int c) { mult[(a * 2 + b) * 2 + c] = 1; };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    set(1, 1, 0);
    set(1, 1, 1);
    return FusionCategory::create("fibonacci", {"1", "tau"}, 0, std::move(mult));
}

inline FusionCategory trivial_category() {
    return FusionCategory::create("trivial", {"1"}, 0, {1});
}

/// Every bundled category: Z_1..Z_7, the toric code, Ising and Fibonacci.
inline std::vector<FusionCategory> bundled_categories() {
    std::vector<FusionCategory> out;
    for (std::size_t n = 1; n <= 7; ++n) out.push_back(cyclic_category(n));
    out.push_back(toric_code_category(2));
    out.push_back(ising_category());
    out.push_back(fibonacci_category());
    return out;
}

/// Resolves a built-in name (z2..z7, toric_code, ising, fibonacci, trivial)
/// or else a path to a JSON document.
inline FusionCategory resolve_category(const std::string &name_or_path) {
    std::string lower;
    for (char ch : name_or_path) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "ising") return ising_category();
    if (lower == "fibonacci" || lower == "fib") return fibonacci_category();
    if (lower == "toric_code" || lower == "toric") return toric_code_category(2);
    if (lower == "trivial") return trivial_category();
    if (lower.size() >= 2 && lower[0] == 'z' &&
        lower.find_first_not_of("0123456789", 1) == std::string::npos) {
        return cyclic_category(std::stoul(lower.substr(1)));
    }
    if (std::filesystem::exists(name_or_path)) return load_category(name_or_path);
    throw MalformedInput("unknown category '" + name_or_path + "'");
}

}  // namespace teelab::fusion
