#pragma once

// Slow, independent reference implementations used by the unit and
// acceptance tests. Nothing here calls into the planners or samplers under
// test; only Gridworld's feature table is shared.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stratlab/irl/gridworld.hpp"

namespace oracle {

using stratlab::irl::Gridworld;

// Up, Down, Left, Right with walls as self-loops.
inline int step(const Gridworld& w, int s, int move) {
    const int r = s / w.width(), c = s % w.width();
    switch (move) {
        case 0: return r > 0 ? s - w.width() : s;
        case 1: return r + 1 < w.height() ? s + w.width() : s;
        case 2: return c > 0 ? s - 1 : s;
        case 3: return c + 1 < w.width() ? s + 1 : s;
    }
    throw std::logic_error("bad move");
}

inline std::vector<double> rewards(const Gridworld& w, const std::vector<double>& theta) {
    std::vector<double> r(w.num_states(), 0.0);
    for (int s = 0; s < w.num_states(); ++s)
        for (int f = 0; f < w.num_features(); ++f) r[s] += theta[f] * w.features(s)[f];
    return r;
}

// Finite-horizon backups V_h(x) = R(x) + γ max_u V_{h−1}(x′), V_0 = 0.
inline std::vector<double> horizon_values(const Gridworld& w, const std::vector<double>& r, int horizon) {
    std::vector<double> v(w.num_states(), 0.0), next(v.size());
    for (int h = 0; h < horizon; ++h) {
        for (int s = 0; s < w.num_states(); ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int m = 0; m < 4; ++m) best = std::max(best, v[step(w, s, m)]);
            next[s] = r[s] + w.gamma() * best;
        }
        v.swap(next);
    }
    return v;
}

// Solves (I − γ P_π) V = R by Gaussian elimination with partial pivoting.
inline std::vector<double> policy_values(const Gridworld& w, const std::vector<double>& r,
                                         const std::vector<int>& policy) {
    const int n = w.num_states();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int s = 0; s < n; ++s) {
        a[s][s] += 1.0;
        a[s][step(w, s, policy[s])] -= w.gamma();
        a[s][n] = r[s];
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        std::swap(a[col], a[piv]);
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0.0) continue;
            const double f = a[i][col] / a[col][col];
            for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    std::vector<double> v(n);
    for (int s = 0; s < n; ++s) v[s] = a[s][n] / a[s][s];
    return v;
}

inline std::vector<int> greedy_policy(const Gridworld& w, const std::vector<double>& v) {
    std::vector<int> pi(w.num_states());
    for (int s = 0; s < w.num_states(); ++s) {
        int best = 0;
        for (int m = 1; m < 4; ++m)
            if (v[step(w, s, m)] > v[step(w, s, best)] + 1e-12) best = m;
        pi[s] = best;
    }
    return pi;
}

// Converged optimal values by repeated backups (γ^1000 is negligible).
inline std::vector<double> optimal_values(const Gridworld& w, const std::vector<double>& r) {
    return horizon_values(w, r, 1000);
}

// π(u | x) ∝ exp{α [R(x) + γ V(x′) + φ (R(x′) − R(x))]}
inline std::array<double, 4> action_probs(const Gridworld& w, const std::vector<double>& r,
                                          const std::vector<double>& v, double phi, double alpha, int s) {
    std::array<double, 4> z{};
    double hi = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < 4; ++m) {
        const int n = step(w, s, m);
        z[m] = alpha * (r[s] + w.gamma() * v[n] + phi * (r[n] - r[s]));
        hi = std::max(hi, z[m]);
    }
    double tot = 0.0;
    for (double& x : z) tot += (x = std::exp(x - hi));
    for (double& x : z) x /= tot;
    return z;
}

inline double log_likelihood(const Gridworld& w, const std::vector<int>& demo, const std::vector<double>& theta,
                             double phi, double alpha) {
    const auto r = rewards(w, theta);
    const auto v = optimal_values(w, r);
    double ll = 0.0;
    for (int s = 0; s < w.num_states(); ++s) ll += std::log(action_probs(w, r, v, phi, alpha, s)[demo[s]]);
    return ll;
}

// Posterior means of (θ, φ) under a uniform box prior, by midpoint
// quadrature with `n` cells per axis. A fixed φ skips the φ axis.
struct GridMeans {
    std::vector<double> theta;
    double phi = 0.0;
};

inline GridMeans grid_posterior_means(const Gridworld& w, const std::vector<int>& demo, double alpha, int n,
                                      const double* fixed_phi = nullptr) {
    const int nf = w.num_features();
    const int axes = nf + (fixed_phi ? 0 : 1);
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = -1.0 + (2.0 * i + 1.0) / n;
    std::vector<int> idx(axes, 0);
    std::vector<double> lls;
    std::vector<std::vector<double>> coords;
    for (;;) {
        std::vector<double> theta(nf);
        for (int f = 0; f < nf; ++f) theta[f] = pts[idx[f]];
        const double phi = fixed_phi ? *fixed_phi : pts[idx[nf]];
        lls.push_back(log_likelihood(w, demo, theta, phi, alpha));
        theta.push_back(phi);
        coords.push_back(std::move(theta));
        int k = 0;
        while (k < axes && ++idx[k] == n) idx[k++] = 0;
        if (k == axes) break;
    }
    const double hi = *std::max_element(lls.begin(), lls.end());
    GridMeans out;
    out.theta.assign(nf, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < lls.size(); ++i) {
        const double p = std::exp(lls[i] - hi);
        z += p;
        for (int f = 0; f < nf; ++f) out.theta[f] += p * coords[i][f];
        out.phi += p * coords[i][nf];
    }
    for (double& t : out.theta) t /= z;
    out.phi /= z;
    return out;
}

}  // namespace oracle
