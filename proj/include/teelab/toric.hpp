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

// Planar Z_p toric code with smooth boundaries on all four sides.
//
// Vertices (i, j) with 0 <= i <= W, 0 <= j <= H. Horizontal edge h(i, j)
// points from (i, j) to (i+1, j), vertical edge v(i, j) from (i, j) to
// (i, j+1). Geometry uses doubled coordinates: vertex (2i, 2j), h(i, j) at
// (2i+1, 2j), v(i, j) at (2i, 2j+1), plaquette (i, j) at (2i+1, 2j+1).
//
// A_v = prod X^{+1} on edges leaving v and X^{-1} on edges entering v.
// B_p = Z^{+1} on bottom and right, Z^{-1} on top and left. Generators are
// every plaquette and every vertex except (W, H).

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "teelab/categories.hpp"
#include "teelab/dense.hpp"
#include "teelab/error.hpp"
#include "teelab/fusion.hpp"
#include "teelab/stabilizer.hpp"
#include "teelab/trace.hpp"

namespace teelab::toric {

using dense::Region;
using stab::Pauli;
using stab::StabilizerState;

struct Point {
    int x = 0, y = 0;
    bool operator==(const Point &) const = default;
};

/// Half-open rectangle [x0, x1) x [y0, y1) in doubled coordinates.
struct Rect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool contains(Point p) const {
        return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1;
    }
    bool empty() const {
        return x1 <= x0 || y1 <= y0;
    }
    /// Plaquette-unit rectangle [px0, px1) x [py0, py1).
    static Rect plaquettes(int px0, int py0, int px1, int py1) {
        return {2 * px0, 2 * py0, 2 * px1, 2 * py1};
    }
};

class Lattice {
   public:
    Lattice(int width, int height, int p) : w_(width), h_(height), p_(p) {
        if (width < 4 || height < 4) throw InvalidGeometry("lattice must be at least 4x4 plaquettes");
        if (!ff::is_prime(p) || p > 251) throw InvalidGeometry("p must be a prime below 256");
    }

    int width() const noexcept {
        return w_;
    }
    int height() const noexcept {
        return h_;
    }
    int p() const noexcept {
        return p_;
    }
    std::size_t horizontal_edges() const {
        return static_cast<std::size_t>(w_) * static_cast<std::size_t>(h_ + 1);
    }
    std::size_t edges() const {
        return horizontal_edges() + static_cast<std::size_t>(w_ + 1) * static_cast<std::size_t>(h_);
    }
    std::size_t vertices() const {
        return static_cast<std::size_t>(w_ + 1) * static_cast<std::size_t>(h_ + 1);
    }
    std::size_t plaquettes() const {
        return static_cast<std::size_t>(w_) * static_cast<std::size_t>(h_);
    }

    std::size_t h_edge(int i, int j) const {
        if (i < 0 || i >= w_ || j < 0 || j > h_) throw InvalidGeometry("horizontal edge out of range");
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(i);
    }
    std::size_t v_edge(int i, int j) const {
        if (i < 0 || i > w_ || j < 0 || j >= h_) throw InvalidGeometry("vertical edge out of range");
        return horizontal_edges() + static_cast<std::size_t>(j) * static_cast<std::size_t>(w_ + 1) +
               static_cast<std::size_t>(i);
    }
    bool is_horizontal(std::size_t e) const {
        return e < horizontal_edges();
    }
    Point edge_point(std::size_t e) const {
        if (e >= edges()) throw InvalidGeometry("edge out of range");
        if (is_horizontal(e)) {
            const int i = static_cast<int>(e % static_cast<std::size_t>(w_));
            const int j = static_cast<int>(e / static_cast<std::size_t>(w_));
            return {2 * i + 1, 2 * j};
        }
        const std::size_t k = e - horizontal_edges();
        const int i = static_cast<int>(k % static_cast<std::size_t>(w_ + 1));
        const int j = static_cast<int>(k / static_cast<std::size_t>(w_ + 1));
        return {2 * i, 2 * j + 1};
    }
    std::string edge_name(std::size_t e) const {
        const Point pt = edge_point(e);
        std::ostringstream os;
        if (is_horizontal(e)) os << "h(" << (pt.x - 1) / 2 << "," << pt.y / 2 << ")";
        else os << "v(" << pt.x / 2 << "," << (pt.y - 1) / 2 << ")";
        return os.str();
    }
    std::vector<std::string> edge_names() const {
        std::vector<std::string> out;
        for (std::size_t e = 0; e < edges(); ++e) out.push_back(edge_name(e));
        return out;
    }

    /// Edges at vertex (i, j) with the X exponent of A_v: +1 out, -1 in.
    std::vector<std::pair<std::size_t, int>> star(int i, int j) const {
        if (i < 0 || i > w_ || j < 0 || j > h_) throw InvalidGeometry("vertex out of range");
        std::vector<std::pair<std::size_t, int>> out;
        if (i < w_) out.push_back({h_edge(i, j), +1});
        if (j < h_) out.push_back({v_edge(i, j), +1});
        if (i > 0) out.push_back({h_edge(i - 1, j), -1});
        if (j > 0) out.push_back({v_edge(i, j - 1), -1});
        return out;
    }
    /// Edges of plaquette (i, j) with the Z exponent of B_p.
    std::vector<std::pair<std::size_t, int>> boundary(int i, int j) const {
        if (i < 0 || i >= w_ || j < 0 || j >= h_) throw InvalidGeometry("plaquette out of range");
        return {{h_edge(i, j), +1}, {v_edge(i + 1, j), +1}, {h_edge(i, j + 1), -1}, {v_edge(i, j), -1}};
    }

    Pauli vertex_operator(int i, int j) const {
        Pauli op = Pauli::identity(edges());
        for (auto [e, s] : star(i, j)) op.x[e] = static_cast<std::uint8_t>((s + p_) % p_);
        return op;
    }
    Pauli plaquette_operator(int i, int j) const {
        Pauli op = Pauli::identity(edges());
        for (auto [e, s] : boundary(i, j)) op.z[e] = static_cast<std::uint8_t>((s + p_) % p_);
        return op;
    }

   private:
    int w_, h_, p_;
};

/// Vacuum: every generator has eigenvalue 1.
inline StabilizerState build_ground_state(const Lattice &lat) {
    std::vector<stab::PhasedPauli> gens;
    gens.reserve(lat.edges());
    for (int j = 0; j < lat.height(); ++j)
        for (int i = 0; i < lat.width(); ++i) gens.push_back({lat.plaquette_operator(i, j), 0});
    for (int j = 0; j <= lat.height(); ++j)
        for (int i = 0; i <= lat.width(); ++i)
            if (!(i == lat.width() && j == lat.height())) gens.push_back({lat.vertex_operator(i, j), 0});
    if (gens.size() != lat.edges()) throw RankDeficiency("generator count differs from the edge count");
    return StabilizerState(lat.p(), lat.edges(), std::move(gens), lat.edge_names());
}

// ---------------------------------------------------------------------------
// Annulus partitions

struct AnnulusSpec {
    int x0 = 1, y0 = 1;  // lower-left corner of the annulus, plaquettes
    int width_b = 2;     // left and right slabs
    int width_a = 2;     // top slab
    int width_c = 2;     // bottom slab
    int hole_w = 6, hole_h = 6;
    std::optional<std::pair<int, int>> origin;  // plaquette; default hole centre
    int ell = 2;

    /// Margin 1 on every side of a size x size lattice.
    static AnnulusSpec centred(int size_w, int size_h, int width_b, int width_a, int width_c, int ell = 2) {
        AnnulusSpec s;
        s.width_b = width_b;
        s.width_a = width_a;
        s.width_c = width_c;
        s.hole_w = size_w - 2 - 2 * width_b;
        s.hole_h = size_h - 2 - width_a - width_c;
        s.ell = ell;
        return s;
    }
};

/// A (top), C (bottom) and B = B1 (left) + B2 (right) around a hole that
/// contains the origin. A may be thinned by `thinning` doubled units on its
/// inner and outer side.
class AnnulusPartition {
   public:
    AnnulusPartition(const Lattice &lat, const AnnulusSpec &spec) : spec_(spec) {
        const int ell = spec.ell;
        if (spec.width_a < ell || spec.width_b < ell || spec.width_c < ell) {
            throw InvalidGeometry("every annulus width must be at least " + std::to_string(ell));
        }
        if (spec.hole_w < 1 || spec.hole_h < 1) throw InvalidGeometry("the annulus has no hole");
        if (spec.x0 < 0 || spec.y0 < 0) throw InvalidGeometry("annulus starts outside the lattice");
        x1_ = spec.x0 + spec.width_b;
        x2_ = x1_ + spec.hole_w;
        x3_ = x2_ + spec.width_b;
        y1_ = spec.y0 + spec.width_c;
        y2_ = y1_ + spec.hole_h;
        y3_ = y2_ + spec.width_a;
        if (x3_ > lat.width() || y3_ > lat.height()) throw InvalidGeometry("annulus does not fit in the lattice");
        origin_ = spec.origin.value_or(std::pair{x1_ + spec.hole_w / 2, y1_ + spec.hole_h / 2});
        const auto [ox, oy] = origin_;
        if (ox < x1_ || ox >= x2_ || oy < y1_ || oy >= y2_) throw InvalidGeometry("the annulus does not enclose the origin");
        const int dist = std::min({ox - x1_, x2_ - 1 - ox, oy - y1_, y2_ - 1 - oy});
        if (dist < ell) {
            throw InvalidGeometry("origin lies " + std::to_string(dist) + " plaquettes from the annulus, need " +
                                  std::to_string(ell));
        }
        edges_ = lat.edges();
        regions_.resize(edges_);
        for (std::size_t e = 0; e < edges_; ++e) {
            points_.push_back(lat.edge_point(e));
            regions_[e] = classify(points_.back());
        }
    }

    const AnnulusSpec &spec() const noexcept {
        return spec_;
    }
    std::pair<int, int> origin() const noexcept {
        return origin_;
    }
    int thinning() const noexcept {
        return thinning_;
    }
    Rect rect_a() const {
        return {2 * x1_, 2 * y2_ + thinning_, 2 * x2_, 2 * y3_ - thinning_};
    }
    Rect rect_a_full() const {
        return Rect::plaquettes(x1_, y2_, x2_, y3_);
    }
    Rect rect_c() const {
        return Rect::plaquettes(x1_, spec_.y0, x2_, y1_);
    }
    Rect rect_b1() const {
        return Rect::plaquettes(spec_.x0, spec_.y0, x1_, y3_);
    }
    Rect rect_b2() const {
        return Rect::plaquettes(x2_, spec_.y0, x3_, y3_);
    }
    Rect rect_hole() const {
        return Rect::plaquettes(x1_, y1_, x2_, y2_);
    }
    /// Doubled width of A after thinning.
    int a_extent() const {
        return 2 * spec_.width_a - 2 * thinning_;
    }

    /// Copy with A thinned by `steps` doubled units on each side.
    AnnulusPartition thinned(int steps) const {
        if (steps < 0) throw InvalidGeometry("negative thinning");
        if (2 * spec_.width_a - 2 * (thinning_ + steps) < 1) {
            throw InsufficientWidth("A of width " + std::to_string(spec_.width_a) + " cannot be thinned " +
                                    std::to_string(thinning_ + steps) + " times");
        }
        AnnulusPartition out = *this;
        out.thinning_ += steps;
        for (std::size_t e = 0; e < edges_; ++e)
            if (out.regions_[e] == Region::A && !out.rect_a().contains(points_[e])) out.regions_[e] = Region::Env;
        return out;
    }

    Region region_of(std::size_t edge) const {
        return regions_.at(edge);
    }
    std::vector<bool> mask(std::initializer_list<Region> regions) const {
        std::vector<bool> m(edges_, false);
        for (std::size_t e = 0; e < edges_; ++e)
            m[e] = std::find(regions.begin(), regions.end(), regions_[e]) != regions.end();
        return m;
    }
    std::vector<std::size_t> edges_in(std::initializer_list<Region> regions) const {
        std::vector<std::size_t> out;
        const auto m = mask(regions);
        for (std::size_t e = 0; e < edges_; ++e)
            if (m[e]) out.push_back(e);
        return out;
    }
    int x1() const noexcept {
        return x1_;
    }
    int x2() const noexcept {
        return x2_;
    }
    int y1() const noexcept {
        return y1_;
    }
    int y2() const noexcept {
        return y2_;
    }
    int y3() const noexcept {
        return y3_;
    }
    bool in_thinned_abc(Point pt) const {
        return rect_a().contains(pt) || rect_b1().contains(pt) || rect_b2().contains(pt) || rect_c().contains(pt);
    }

   private:
    Region classify(Point pt) const {
        if (rect_a().contains(pt)) return Region::A;
        if (rect_c().contains(pt)) return Region::C;
        if (rect_b1().contains(pt) || rect_b2().contains(pt)) return Region::B;
        return Region::Env;
    }

    AnnulusSpec spec_;
    int x1_ = 0, x2_ = 0, x3_ = 0, y1_ = 0, y2_ = 0, y3_ = 0;
    std::pair<int, int> origin_;
    int thinning_ = 0;
    std::size_t edges_ = 0;
    std::vector<Region> regions_;
    std::vector<Point> points_;
};

// ---------------------------------------------------------------------------
// Strings

/// An open or closed string: Z-type along lattice edges (electric) or X-type
/// across edges (magnetic). `signs` are the exponents per unit charge.
struct StringPath {
    enum class Type { Electric, Magnetic };
    Type type = Type::Electric;
    bool closed = false;
    std::vector<std::pair<std::size_t, int>> edges;  // edge, sign +-1
    std::optional<Point> start, end;                 // doubled coordinates of open endpoints

    Pauli operator_for(int charge, const Lattice &lat) const {
        Pauli op = Pauli::identity(lat.edges());
        const int p = lat.p();
        for (auto [e, s] : edges) {
            const int v = ((s * charge) % p + p) % p;
            auto &slot = type == Type::Electric ? op.z[e] : op.x[e];
            slot = static_cast<std::uint8_t>((slot + v) % p);
        }
        return op;
    }
};

/// Z-string through the vertex sequence `nodes`; the first vertex receives
/// charge +c, the last -c.
inline StringPath electric_path(const Lattice &lat, const std::vector<std::pair<int, int>> &nodes) {
    if (nodes.size() < 2) throw InvalidGeometry("a path needs at least two vertices");
    StringPath path;
    path.type = StringPath::Type::Electric;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const auto [i0, j0] = nodes[k];
        const auto [i1, j1] = nodes[k + 1];
        std::optional<std::pair<std::size_t, int>> step;
        for (auto [e, s] : lat.star(i0, j0)) {
            for (auto [e2, s2] : lat.star(i1, j1))
                if (e == e2) step = std::pair{e, -s};
        }
        if (!step || std::abs(i0 - i1) + std::abs(j0 - j1) != 1) throw InvalidGeometry("path vertices are not adjacent");
        path.edges.push_back(*step);
    }
    path.closed = nodes.front() == nodes.back();
    if (!path.closed) {
        path.start = Point{2 * nodes.front().first, 2 * nodes.front().second};
        path.end = Point{2 * nodes.back().first, 2 * nodes.back().second};
    }
    return path;
}

/// X-string across edges, from plaquette to plaquette. The first plaquette
/// receives flux +c; `exit_top` continues through the top edge of the last
/// plaquette when it lies on the boundary row.
inline StringPath magnetic_path(const Lattice &lat, const std::vector<std::pair<int, int>> &nodes, bool exit_top = false) {
    if (nodes.empty()) throw InvalidGeometry("a dual path needs a plaquette");
    StringPath path;
    path.type = StringPath::Type::Magnetic;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const auto [i0, j0] = nodes[k];
        const auto [i1, j1] = nodes[k + 1];
        if (std::abs(i0 - i1) + std::abs(j0 - j1) != 1) throw InvalidGeometry("path plaquettes are not adjacent");
        std::optional<std::pair<std::size_t, int>> step;
        for (auto [e, s] : lat.boundary(i0, j0))
            for (auto [e2, s2] : lat.boundary(i1, j1))
                if (e == e2) step = std::pair{e, s};
        path.edges.push_back(*step);
    }
    if (exit_top) {
        const auto [i, j] = nodes.back();
        if (j != lat.height() - 1) throw InvalidGeometry("only the top row can exit through the boundary");
        path.edges.push_back({lat.h_edge(i, j + 1), -1});
    }
    path.closed = nodes.size() > 1 && nodes.front() == nodes.back();
    if (!path.closed) {
        path.start = Point{2 * nodes.front().first + 1, 2 * nodes.front().second + 1};
        if (!exit_top) path.end = Point{2 * nodes.back().first + 1, 2 * nodes.back().second + 1};
    }
    return path;
}

/// Anyon label (e, m) in Z_p x Z_p; index e * p + m.
struct SectorLabel {
    int e = 0, m = 0;
    auto operator<=>(const SectorLabel &) const = default;
    std::size_t index(int p) const {
        return static_cast<std::size_t>(e * p + m);
    }
    static SectorLabel from_index(std::size_t idx, int p) {
        return {static_cast<int>(idx) / p, static_cast<int>(idx) % p};
    }
    SectorLabel fuse(const SectorLabel &o, int p) const {
        return {(e + o.e) % p, (m + o.m) % p};
    }
};

inline std::vector<SectorLabel> all_sectors(int p) {
    std::vector<SectorLabel> out;
    for (int e = 0; e < p; ++e)
        for (int m = 0; m < p; ++m) out.push_back({e, m});
    return out;
}

/// L-shaped routing: horizontal from the origin to `detour` column, then up
/// to the top boundary.
struct Routing {
    std::pair<int, int> origin;
    std::optional<int> detour;
};

struct SectorStrings {
    StringPath electric, magnetic;
};

inline SectorStrings sector_strings(const Lattice &lat, const Routing &route) {
    const auto [ox, oy] = route.origin;
    const int dx = route.detour.value_or(ox);
    if (ox < 0 || ox >= lat.width() || oy < 0 || oy >= lat.height()) throw InvalidGeometry("origin outside the lattice");
    if (dx < 0 || dx >= lat.width()) throw InvalidGeometry("detour column outside the lattice");
    std::vector<std::pair<int, int>> vs, ps;
    const int step = dx >= ox ? 1 : -1;
    for (int i = ox; i != dx; i += step) {
        vs.push_back({i, oy});
        ps.push_back({i, oy});
    }
    for (int j = oy; j <= lat.height(); ++j) vs.push_back({dx, j});
    for (int j = oy; j < lat.height(); ++j) ps.push_back({dx, j});
    return {electric_path(lat, vs), magnetic_path(lat, ps, true)};
}

/// Sector state obtained by applying the electric string with charge e and
/// the magnetic string with flux m. With an annulus, PathBlocked is raised
/// unless the strings leave the hole through A only.
inline StabilizerState create_sector(const StabilizerState &vacuum, const Lattice &lat, SectorLabel a,
                                     const Routing &route, const AnnulusPartition *guard = nullptr) {
    const int p = lat.p();
    if (a.e < 0 || a.e >= p || a.m < 0 || a.m >= p) throw InvalidGeometry("sector label outside Z_p x Z_p");
    if (vacuum.qudits() != lat.edges() || vacuum.p() != p) throw InvalidState("state does not match the lattice");
    const SectorStrings s = sector_strings(lat, route);
    if (guard) {
        for (const StringPath *path : {&s.electric, &s.magnetic})
            for (auto [e, sign] : path->edges) {
                const Region r = guard->region_of(e);
                if (r == Region::B || r == Region::C) {
                    throw PathBlocked("string crosses " + std::string(dense::region_name(r)) + " at " + lat.edge_name(e) +
                                      "; choose a detour column inside the hole");
                }
            }
    }
    StabilizerState out = vacuum;
    if (a.e) out = out.conjugated(s.electric.operator_for(a.e, lat));
    if (a.m) out = out.conjugated(s.magnetic.operator_for(a.m, lat));
    return out;
}

inline Routing default_routing(const AnnulusPartition &part) {
    return {part.origin(), std::nullopt};
}

/// All p^2 sector states with the default routing of `part`.
inline std::map<SectorLabel, StabilizerState> all_sector_states(const Lattice &lat, const AnnulusPartition &part) {
    const StabilizerState vacuum = build_ground_state(lat);
    std::map<SectorLabel, StabilizerState> out;
    for (const auto &a : all_sectors(lat.p())) out.emplace(a, create_sector(vacuum, lat, a, default_routing(part), &part));
    return out;
}

/// Closed Z-loop around the hole, `depth` plaquettes outward from it. Its
/// eigenphase is minus the enclosed flux.
inline StringPath flux_loop(const Lattice &lat, const AnnulusPartition &part, int depth = 1) {
    const int xa = part.x1() - depth, xb = part.x2() + depth - 1;
    const int ya = part.y1() - depth, yb = part.y2() + depth - 1;
    std::vector<std::pair<int, int>> nodes;
    for (int i = xa; i <= xb + 1; ++i) nodes.push_back({i, ya});
    for (int j = ya + 1; j <= yb + 1; ++j) nodes.push_back({xb + 1, j});
    for (int i = xb; i >= xa; --i) nodes.push_back({i, yb + 1});
    for (int j = yb; j >= ya; --j) nodes.push_back({xa, j});
    return electric_path(lat, nodes);
}

/// Closed dual X-loop around the hole; its eigenphase is the enclosed charge
/// up to sign.
inline StringPath charge_loop(const Lattice &lat, const AnnulusPartition &part, int depth = 1) {
    const int xa = part.x1() - depth, xb = part.x2() + depth - 1;
    const int ya = part.y1() - depth, yb = part.y2() + depth - 1;
    std::vector<std::pair<int, int>> nodes;
    for (int i = xa; i <= xb; ++i) nodes.push_back({i, ya});
    for (int j = ya + 1; j <= yb; ++j) nodes.push_back({xb, j});
    for (int i = xb - 1; i >= xa; --i) nodes.push_back({i, yb});
    for (int j = yb - 1; j >= ya; --j) nodes.push_back({xa, j});
    return magnetic_path(lat, nodes);
}

// ---------------------------------------------------------------------------
// Conditional mutual information

struct AnnulusCmi {
    stab::RegionEntropy ab, bc, b, abc;
    long units() const {
        return ab.units + bc.units - b.units - abc.units;
    }
    int p() const {
        return ab.p;
    }
    double nats() const {
        return static_cast<double>(units()) * std::log(static_cast<double>(p()));
    }
};

inline AnnulusCmi annulus_cmi_terms(const StabilizerState &state, const AnnulusPartition &part) {
    AnnulusCmi r;
    r.ab = stab::region_entropy(state, part.mask({Region::A, Region::B}));
    r.bc = stab::region_entropy(state, part.mask({Region::B, Region::C}));
    r.b = stab::region_entropy(state, part.mask({Region::B}));
    r.abc = stab::region_entropy(state, part.mask({Region::A, Region::B, Region::C}));
    return r;
}

inline double annulus_cmi(const StabilizerState &state, const AnnulusPartition &part) {
    return annulus_cmi_terms(state, part).nats();
}

// ---------------------------------------------------------------------------
// Assumption checks

/// Where W_s is placed: a vertical electric string and a vertical magnetic
/// string in column `column` of A. The default ends lie just outside A'; the
/// override rows place an end elsewhere (vertex row for the electric string,
/// plaquette row for the magnetic one).
struct FusionRule {
    int steps = 1;
    std::optional<int> column;
    std::optional<int> electric_end_row;
    std::optional<int> magnetic_end_row;
};

inline SectorStrings fusion_strings(const Lattice &lat, const AnnulusPartition &part, const FusionRule &rule) {
    const int col = rule.column.value_or((part.x1() + part.x2()) / 2);
    if (col < part.x1() || col >= part.x2()) throw InvalidGeometry("fusion column outside A");
    const int e_end = rule.electric_end_row.value_or(part.y3());
    const int m_end = rule.magnetic_end_row.value_or(part.y3() - 1);
    std::vector<std::pair<int, int>> vs, ps;
    for (int j = part.y2(); j <= e_end; ++j) vs.push_back({col, j});
    for (int j = part.y2() - 1; j <= m_end; ++j) ps.push_back({col, j});
    return {electric_path(lat, vs), magnetic_path(lat, ps)};
}

/// Throws SupportViolation unless W is inside A and SiteInThinnedRegion if an
/// endpoint lies in A'BC.
inline void check_fusion_strings(const Lattice &lat, const AnnulusPartition &full, const AnnulusPartition &thinned,
                                 const SectorStrings &w) {
    for (const StringPath *path : {&w.electric, &w.magnetic}) {
        for (auto [e, s] : path->edges)
            if (full.region_of(e) != Region::A) throw SupportViolation("W acts on " + lat.edge_name(e) + " outside A");
        for (const auto &pt : {path->start, path->end})
            if (pt && thinned.in_thinned_abc(*pt)) {
                throw SiteInThinnedRegion("string endpoint at doubled (" + std::to_string(pt->x) + "," +
                                          std::to_string(pt->y) + ") lies in A'BC");
            }
    }
}

struct PropertyViolation {
    std::string property;
    std::string sectors;
    std::string witness;
    std::vector<std::size_t> witness_support;
};

struct AssumptionReport {
    bool property1 = true, property2 = true, property3 = true;
    std::vector<PropertyViolation> violations;
    bool pass() const {
        return property1 && property2 && property3;
    }
};

namespace detail {

inline std::string sector_name(const SectorLabel &a) {
    return "(" + std::to_string(a.e) + "," + std::to_string(a.m) + ")";
}

inline PropertyViolation violation(const std::string &property, const std::string &sectors,
                                   const stab::CanonicalForm &cf, const stab::ReductionComparison &cmp,
                                   const Lattice &lat) {
    PropertyViolation v{property, sectors, "", {}};
    std::vector<std::string> names;
    for (std::size_t q : cf.region) names.push_back(lat.edge_name(q));
    std::ostringstream os;
    const auto &w = cmp.witness_a ? *cmp.witness_a : *cmp.witness_b;
    os << stab::describe(w.op, names);
    if (cmp.witness_a && cmp.witness_b && cmp.same_group) {
        os << " has phase " << cmp.witness_a->phase << " vs " << cmp.witness_b->phase;
    } else {
        os << " (restricted groups differ)";
    }
    v.witness = os.str();
    for (std::size_t i = 0; i < w.op.size(); ++i)
        if (w.op.x[i] || w.op.z[i]) v.witness_support.push_back(cf.region[i]);
    return v;
}

}  // namespace detail

/// Properties 1 to 3 by exact canonical-form comparison. Every sector label
/// of Z_p x Z_p must be present.
inline AssumptionReport verify_assumptions(const std::map<SectorLabel, StabilizerState> &states, const Lattice &lat,
                                           const AnnulusPartition &part, const FusionRule &rule = {}) {
    const int p = lat.p();
    for (const auto &a : all_sectors(p))
        if (!states.count(a)) throw InvalidState("sector " + detail::sector_name(a) + " missing");
    AssumptionReport report;

    const auto abc = part.mask({Region::A, Region::B, Region::C});
    const auto ab = part.mask({Region::A, Region::B});
    const auto bc = part.mask({Region::B, Region::C});
    std::map<SectorLabel, stab::CanonicalForm> f_abc, f_ab, f_bc;
    for (const auto &[a, st] : states) {
        f_abc.emplace(a, stab::canonical_form(st, abc));
        f_ab.emplace(a, stab::canonical_form(st, ab));
        f_bc.emplace(a, stab::canonical_form(st, bc));
    }
    for (auto i = states.begin(); i != states.end(); ++i)
        for (auto j = std::next(i); j != states.end(); ++j) {
            const std::string pair = detail::sector_name(i->first) + "," + detail::sector_name(j->first);
            const auto c1 = stab::compare_reductions(f_abc.at(i->first), f_abc.at(j->first));
            if (!c1.same_group) throw InvalidState("restricted groups on ABC differ; overlap not decided");
            if (!c1.orthogonal) {
                report.property1 = false;
                report.violations.push_back({"property1", pair, "reductions on ABC coincide", {}});
            }
            for (auto [forms, tag] : {std::pair{&f_ab, "AB"}, std::pair{&f_bc, "BC"}}) {
                const auto c2 = stab::compare_reductions(forms->at(i->first), forms->at(j->first));
                if (!c2.equal) {
                    report.property2 = false;
                    report.violations.push_back(
                        detail::violation(std::string("property2 on ") + tag, pair, forms->at(i->first), c2, lat));
                }
            }
        }

    const AnnulusPartition thin = part.thinned(rule.steps);
    const auto apbc = thin.mask({Region::A, Region::B, Region::C});
    const SectorStrings w = fusion_strings(lat, part, rule);
    std::map<SectorLabel, stab::CanonicalForm> f_apbc;
    for (const auto &[a, st] : states) f_apbc.emplace(a, stab::canonical_form(st, apbc));
    for (const auto &s : all_sectors(p)) {
        if (s.e == 0 && s.m == 0) continue;
        Pauli op = w.electric.operator_for(s.e, lat);
        const Pauli mag = w.magnetic.operator_for(s.m, lat);
        for (std::size_t q = 0; q < op.size(); ++q) op.x[q] = static_cast<std::uint8_t>((op.x[q] + mag.x[q]) % p);
        for (const auto &[a, st] : states) {
            const auto lhs = stab::canonical_form(st.conjugated(op), apbc);
            const SectorLabel target = s.fuse(a, p);
            const auto cmp = stab::compare_reductions(lhs, f_apbc.at(target));
            if (!cmp.equal) {
                report.property3 = false;
                report.violations.push_back(detail::violation(
                    "property3", "s=" + detail::sector_name(s) + ",a=" + detail::sector_name(a), lhs, cmp, lat));
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Nested annuli

/// I_i^(a) for A_0 BC within ... within A_{n+1} BC = ABC, where A_i is A
/// thinned n + 1 - i times.
inline AuditTrace nested_annulus_table(const std::map<SectorLabel, StabilizerState> &states, const Lattice &lat,
                                       const AnnulusPartition &base, int n) {
    if (n < 1) throw InsufficientWidth("at least one intermediate thinning is required");
    const int p = lat.p();
    const AnnulusPartition innermost = base.thinned(n + 1);
    (void)innermost;
    const auto cat = fusion::toric_code_category(static_cast<std::size_t>(p));
    const std::size_t k = cat.size();
    AuditTrace t;
    t.labels = cat.labels();
    t.table.assign(k, std::vector<double>(static_cast<std::size_t>(n) + 2, 0.0));
    for (const auto &a : all_sectors(p)) {
        auto it = states.find(a);
        if (it == states.end()) throw InvalidState("sector " + detail::sector_name(a) + " missing");
        for (int i = 0; i <= n + 1; ++i)
            t.table[a.index(p)][static_cast<std::size_t>(i)] = annulus_cmi(it->second, base.thinned(n + 1 - i));
    }
    std::vector<double> table(k * k * k, 0.0);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t a = 0; a < k; ++a) {
            const auto c = SectorLabel::from_index(s, p).fuse(SectorLabel::from_index(a, p), p);
            table[(s * k + a) * k + c.index(p)] = 1.0;
        }
    t.fp = fusion::FusionProbabilities(k, std::move(table));
    t.p_star = fusion::AnyonDistribution::uniform(k);
    t.a0 = 0;
    t.provenance = "stabilizer_tee";
    t.validate();
    return t;
}

}  // namespace teelab::toric
