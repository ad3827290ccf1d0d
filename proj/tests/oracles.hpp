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

// Reference computations that share no code with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Largest root of f in [lo, hi] by bisection; f(lo) and f(hi) differ in sign.
inline double bisect(const std::function<double(double)> &f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden ratio as the positive root of x^2 - x - 1.
inline double fibonacci_d() {
    return bisect([](double x) { return x * x - x - 1.0; }, 1.0, 2.0);
}

/// sigma dimension: characteristic polynomial of N_sigma on {1, sigma, psi}
/// is -l^3 + 2 l, largest root sqrt(2).
inline double ising_sigma_d() {
    return bisect([](double l) { return l * l * l - 2.0 * l; }, 1.0, 2.0);
}

/// Shannon entropy of integer counts, in nats.
inline double count_entropy(const std::map<std::vector<int>, long> &counts) {
    long total = 0;
    for (const auto &[k, n] : counts) total += n;
    long double h = 0.0L;
    for (const auto &[k, n] : counts) {
        const long double p = static_cast<long double>(n) / static_cast<long double>(total);
        h -= p * std::log(p);
    }
    return static_cast<double>(h);
}

/// Brute-force CMI of the Z_q ring sector a. Columns are ordered A, B1, C,
/// B2 and every copy in a column carries the same value, so only column
/// values matter.
inline double ring_cmi(int q, const std::vector<int> &arcs, int a) {
    const int ncol = arcs[0] + arcs[1] + arcs[2] + arcs[3];
    std::vector<char> region(static_cast<std::size_t>(ncol));
    int c = 0;
    const char tags[4] = {'A', 'B', 'C', 'B'};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < arcs[static_cast<std::size_t>(k)]; ++i) region[static_cast<std::size_t>(c++)] = tags[k];

    std::map<std::vector<int>, long> ab, bc, b, abc;
    std::vector<int> v(static_cast<std::size_t>(ncol), 0);
    long states = 1;
    for (int i = 0; i < ncol; ++i) states *= q;
    for (long idx = 0; idx < states; ++idx) {
        long r = idx;
        int sum = 0;
        for (int i = 0; i < ncol; ++i) {
            v[static_cast<std::size_t>(i)] = static_cast<int>(r % q);
            r /= q;
            sum += v[static_cast<std::size_t>(i)];
        }
        if (sum % q != a) continue;
        std::vector<int> kab, kbc, kb, kabc;
        for (int i = 0; i < ncol; ++i) {
            const char t = region[static_cast<std::size_t>(i)];
            const int x = v[static_cast<std::size_t>(i)];
            if (t == 'A' || t == 'B') kab.push_back(x);
            if (t == 'B' || t == 'C') kbc.push_back(x);
            if (t == 'B') kb.push_back(x);
            kabc.push_back(x);
        }
        ++ab[kab];
        ++bc[kbc];
        ++b[kb];
        ++abc[kabc];
    }
    return count_entropy(ab) + count_entropy(bc) - count_entropy(b) - count_entropy(abc);
}

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Generator X^x Z^z (qudit-wise) with eigenphase omega^phase.
struct Generator {
    std::vector<int> x, z;
    int phase = 0;
};

/// Full state vector of a stabilizer state on n qudits of dimension p,
/// obtained by projecting a fixed generic vector onto the joint eigenspace.
/// Qudit 0 is the most significant digit.
inline Vector stabilizer_vector(int p, int n, const std::vector<Generator> &gens) {
    const double pi = std::numbers::pi;
    const Complex omega = std::polar(1.0, 2.0 * pi / p);
    Matrix X = Matrix::Zero(p, p), Z = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j) {
        X((j + 1) % p, j) = 1.0;
        Z(j, j) = std::pow(omega, j);
    }
    auto power = [](const Matrix &m, int k) {
        Matrix r = Matrix::Identity(m.rows(), m.cols());
        for (int i = 0; i < k; ++i) r = r * m;
        return r;
    };
    long dim = 1;
    for (int i = 0; i < n; ++i) dim *= p;
    Vector psi(dim);
    for (long i = 0; i < dim; ++i) psi(i) = Complex(1.0 + 0.37 * std::sin(1.3 * i + 0.2), 0.11 * std::cos(0.7 * i));
    for (const auto &g : gens) {
        Matrix op = Matrix::Identity(1, 1);
        for (int q = 0; q < n; ++q) {
            const Matrix local = power(X, g.x[static_cast<std::size_t>(q)]) * power(Z, g.z[static_cast<std::size_t>(q)]);
            Matrix next(op.rows() * p, op.cols() * p);
            for (Eigen::Index r = 0; r < op.rows(); ++r)
                for (Eigen::Index c = 0; c < op.cols(); ++c) next.block(r * p, c * p, p, p) = op(r, c) * local;
            op = next;
        }
        const Matrix shifted = std::pow(omega, -g.phase) * op;
        Matrix proj = Matrix::Zero(dim, dim);
        Matrix acc = Matrix::Identity(dim, dim);
        for (int k = 0; k < p; ++k) {
            proj += acc;
            acc = acc * shifted;
        }
        psi = (proj / static_cast<double>(p)) * psi;
    }
    return psi / psi.norm();
}

/// von Neumann entropy (nats) of the reduction of a pure state onto the
/// qudits in `region`, from the Schmidt spectrum.
inline double pure_region_entropy(const Vector &psi, int p, int n, const std::set<int> &region) {
    std::vector<int> keep, rest;
    for (int q = 0; q < n; ++q) (region.count(q) ? keep : rest).push_back(q);
    if (keep.empty() || rest.empty()) return 0.0;
    long dk = 1, dr = 1;
    for (std::size_t i = 0; i < keep.size(); ++i) dk *= p;
    for (std::size_t i = 0; i < rest.size(); ++i) dr *= p;
    Matrix m = Matrix::Zero(dk, dr);
    for (long idx = 0; idx < psi.size(); ++idx) {
        std::vector<int> digit(static_cast<std::size_t>(n));
        long r = idx;
        for (int q = n - 1; q >= 0; --q) {
            digit[static_cast<std::size_t>(q)] = static_cast<int>(r % p);
            r /= p;
        }
        long i = 0, j = 0;
        for (int q : keep) i = i * p + digit[static_cast<std::size_t>(q)];
        for (int q : rest) j = j * p + digit[static_cast<std::size_t>(q)];
        m(i, j) = psi(idx);
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    double h = 0.0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double s2 = svd.singularValues()(k) * svd.singularValues()(k);
        if (s2 > 1e-13) h -= s2 * std::log(s2);
    }
    return h;
}

}  // namespace oracle
