#pragma once

// Finite-support probability distributions over hypothesis grids.
//
// A Belief<H> pairs an immutable HypothesisGrid<H> with a probability mass
// vector aligned to it. Every operation is a pure function returning a new
// Belief; grids are shared between copies. Joint beliefs are Belief<std::pair<A, B>>
// over a product grid (all combinations of the distinct first and second
// components).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace stratlab {

// Posterior mass vanished: the observation is impossible under every hypothesis.
class ContradictoryEvidence : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kNormalizationTolerance = 1e-9;
// Total unnormalized mass below this is treated as contradictory evidence.
inline constexpr double kMinTotalMass = 1e-12;

template <class H>
class HypothesisGrid {
public:
    using value_type = H;

    explicit HypothesisGrid(std::vector<H> points)
        : points_(std::make_shared<const std::vector<H>>(std::move(points))) {
        if (points_->empty()) throw std::invalid_argument("HypothesisGrid: empty grid");
        if (!all_distinct(*points_)) throw std::invalid_argument("HypothesisGrid: duplicate points");
    }

    std::size_t size() const { return points_->size(); }
    const H& operator[](std::size_t i) const { return (*points_)[i]; }
    std::span<const H> points() const { return *points_; }
    auto begin() const { return points_->begin(); }
    auto end() const { return points_->end(); }

    std::optional<std::size_t> index_of(const H& h) const {
        auto it = std::find(points_->begin(), points_->end(), h);
        if (it == points_->end()) return std::nullopt;
        return static_cast<std::size_t>(it - points_->begin());
    }

    friend bool operator==(const HypothesisGrid& a, const HypothesisGrid& b) {
        return a.points_ == b.points_ || *a.points_ == *b.points_;
    }

private:
    static bool all_distinct(const std::vector<H>& pts) {
        if constexpr (std::totally_ordered<H>) {
            std::vector<H> sorted = pts;
            std::sort(sorted.begin(), sorted.end());
            return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        } else {
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    if (pts[i] == pts[j]) return false;
            return true;
        }
    }

    std::shared_ptr<const std::vector<H>> points_;
};

template <class H>
class Belief {
public:
    using hypothesis_type = H;

    Belief(HypothesisGrid<H> grid, std::vector<double> mass)
        : grid_(std::move(grid)), mass_(std::move(mass)) {
        if (mass_.size() != grid_.size())
            throw std::invalid_argument("Belief: mass length does not match grid");
        double total = 0.0;
        for (double m : mass_) {
            if (!(m >= 0.0)) throw std::invalid_argument("Belief: negative or NaN mass");
            total += m;
        }
        if (std::abs(total - 1.0) > kNormalizationTolerance)
            throw std::invalid_argument("Belief: masses sum to " + std::to_string(total));
    }

    // Renormalizes nonnegative weights onto the grid.
    static Belief from_weights(HypothesisGrid<H> grid, std::vector<double> weights) {
        if (weights.size() != grid.size())
            throw std::invalid_argument("Belief: weight length does not match grid");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("Belief: negative or NaN weight");
            total += w;
        }
        if (!(total > kMinTotalMass))
            throw ContradictoryEvidence("Belief: total mass " + std::to_string(total) +
                                        " is below the renormalization threshold");
        for (double& w : weights) w /= total;
        return Belief(std::move(grid), std::move(weights));
    }

    static Belief point_mass(HypothesisGrid<H> grid, std::size_t index) {
        if (index >= grid.size()) throw std::out_of_range("Belief::point_mass: index");
        std::vector<double> mass(grid.size(), 0.0);
        mass[index] = 1.0;
        return Belief(std::move(grid), std::move(mass));
    }

    static Belief point_mass(HypothesisGrid<H> grid, const H& at) {
        auto idx = grid.index_of(at);
        if (!idx) throw std::invalid_argument("Belief::point_mass: hypothesis not in grid");
        return point_mass(std::move(grid), *idx);
    }

    const HypothesisGrid<H>& grid() const { return grid_; }
    std::span<const double> mass() const { return mass_; }
    std::size_t size() const { return mass_.size(); }
    double operator[](std::size_t i) const { return mass_[i]; }

    // Mass at a hypothesis; zero when it is not on the grid.
    double prob(const H& h) const {
        auto idx = grid_.index_of(h);
        return idx ? mass_[*idx] : 0.0;
    }

private:
    HypothesisGrid<H> grid_;
    std::vector<double> mass_;
};

template <class H>
Belief<H> uniform(const HypothesisGrid<H>& grid) {
    return Belief<H>(grid, std::vector<double>(grid.size(), 1.0 / static_cast<double>(grid.size())));
}

// Posterior ∝ prior × likelihood. Throws ContradictoryEvidence when the
// product vanishes everywhere.
template <class H, class Likelihood>
    requires std::invocable<const Likelihood&, const H&>
Belief<H> bayes_update(const Belief<H>& prior, const Likelihood& likelihood) {
    std::vector<double> w(prior.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (prior[i] == 0.0) continue;
        const double l = static_cast<double>(likelihood(prior.grid()[i]));
        if (!(l >= 0.0)) throw std::invalid_argument("bayes_update: negative or NaN likelihood");
        w[i] = prior[i] * l;
    }
    return Belief<H>::from_weights(prior.grid(), std::move(w));
}

// Same update with likelihoods given per grid index.
template <class H>
Belief<H> bayes_update(const Belief<H>& prior, std::span<const double> likelihood) {
    if (likelihood.size() != prior.size())
        throw std::invalid_argument("bayes_update: likelihood length does not match grid");
    std::vector<double> w(prior.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(likelihood[i] >= 0.0)) throw std::invalid_argument("bayes_update: negative or NaN likelihood");
        w[i] = prior[i] * likelihood[i];
    }
    return Belief<H>::from_weights(prior.grid(), std::move(w));
}

// Shannon entropy in nats, with 0 log 0 = 0.
template <class H>
double entropy(const Belief<H>& b) {
    double h = 0.0;
    for (double p : b.mass())
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

// KL(p ‖ q) in nats over a shared grid; +inf when p has mass where q has none.
template <class H>
double kl_divergence(const Belief<H>& p, const Belief<H>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: grid mismatch");
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return std::max(kl, 0.0);
}

template <class T>
concept Scalar = std::is_arithmetic_v<T>;

template <class T>
concept NumericVector = requires(const T& v) {
    { v.size() } -> std::convertible_to<std::size_t>;
    { v[0] } -> std::convertible_to<double>;
} && !Scalar<T>;

// Expected value Σ p_i h_i. Only defined for numeric hypotheses.
template <Scalar H>
double mean(const Belief<H>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) m += b[i] * static_cast<double>(b.grid()[i]);
    return m;
}

template <NumericVector H>
std::vector<double> mean(const Belief<H>& b) {
    const std::size_t dim = b.grid()[0].size();
    std::vector<double> m(dim, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const H& h = b.grid()[i];
        if (h.size() != dim) throw std::invalid_argument("mean: hypotheses of differing dimension");
        for (std::size_t k = 0; k < dim; ++k) m[k] += b[i] * static_cast<double>(h[k]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Product grids and joint beliefs

// Factorization of a product grid: each joint index maps to (row, col) over
// the distinct first and second components in order of first appearance.
template <class A, class B>
struct ProductLayout {
    std::vector<A> firsts;
    std::vector<B> seconds;
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
};

template <class T>
std::size_t intern(std::vector<T>& values, const T& v) {
    auto it = std::find(values.begin(), values.end(), v);
    if (it != values.end()) return static_cast<std::size_t>(it - values.begin());
    values.push_back(v);
    return values.size() - 1;
}

// Throws std::invalid_argument when the grid is not a full Cartesian product.
template <class A, class B>
ProductLayout<A, B> product_layout(const HypothesisGrid<std::pair<A, B>>& grid) {
    ProductLayout<A, B> layout;
    layout.row.reserve(grid.size());
    layout.col.reserve(grid.size());
    for (const auto& [a, b] : grid) {
        layout.row.push_back(intern(layout.firsts, a));
        layout.col.push_back(intern(layout.seconds, b));
    }
    // Points are distinct, so a size match means every combination occurs.
    if (layout.firsts.size() * layout.seconds.size() != grid.size())
        throw std::invalid_argument("joint belief is not over a product grid");
    return layout;
}

template <class A, class B>
HypothesisGrid<std::pair<A, B>> product_grid(const HypothesisGrid<A>& as, const HypothesisGrid<B>& bs) {
    std::vector<std::pair<A, B>> pts;
    pts.reserve(as.size() * bs.size());
    for (const A& a : as)
        for (const B& b : bs) pts.emplace_back(a, b);
    return HypothesisGrid<std::pair<A, B>>(std::move(pts));
}

// Independent joint p(a)·q(b) on the A-major product grid.
template <class A, class B>
Belief<std::pair<A, B>> product(const Belief<A>& pa, const Belief<B>& pb) {
    std::vector<double> mass;
    mass.reserve(pa.size() * pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) mass.push_back(pa[i] * pb[j]);
    return Belief<std::pair<A, B>>::from_weights(product_grid(pa.grid(), pb.grid()), std::move(mass));
}

// Marginal over axis 0 (first component) or axis 1 (second component).
template <std::size_t Axis, class A, class B>
    requires(Axis < 2)
auto marginalize(const Belief<std::pair<A, B>>& joint) {
    const auto layout = product_layout(joint.grid());
    using Kept = std::conditional_t<Axis == 0, A, B>;
    const auto& kept = [&]() -> const std::vector<Kept>& {
        if constexpr (Axis == 0) return layout.firsts;
        else return layout.seconds;
    }();
    const auto& index = Axis == 0 ? layout.row : layout.col;
    std::vector<double> mass(kept.size(), 0.0);
    for (std::size_t i = 0; i < joint.size(); ++i) mass[index[i]] += joint[i];
    return Belief<Kept>::from_weights(HypothesisGrid<Kept>(kept), std::move(mass));
}

// Distribution of the second component given the first equals `given`.
template <class A, class B>
Belief<B> conditional(const Belief<std::pair<A, B>>& joint, const A& given) {
    const auto layout = product_layout(joint.grid());
    auto it = std::find(layout.firsts.begin(), layout.firsts.end(), given);
    if (it == layout.firsts.end()) throw std::invalid_argument("conditional: value not on the grid");
    const std::size_t r = static_cast<std::size_t>(it - layout.firsts.begin());
    std::vector<double> mass(layout.seconds.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        if (layout.row[i] != r) continue;
        mass[layout.col[i]] += joint[i];
        total += joint[i];
    }
    if (!(total > kMinTotalMass)) throw ContradictoryEvidence("conditional: zero-mass slice");
    return Belief<B>::from_weights(HypothesisGrid<B>(layout.seconds), std::move(mass));
}

}  // namespace stratlab
