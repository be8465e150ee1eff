#include "stratlab/irl/gridworld.hpp"

#include <stdexcept>
#include <string>

namespace stratlab::irl {

std::string_view to_string(Move m) {
    switch (m) {
        case Move::Up: return "up";
        case Move::Down: return "down";
        case Move::Left: return "left";
        case Move::Right: return "right";
    }
    return "?";
}

Gridworld::Gridworld(int width, int height, int num_features, std::vector<std::uint8_t> features, double gamma)
    : width_(width), height_(height), num_features_(num_features), gamma_(gamma), features_(std::move(features)) {
    if (width < 1 || height < 1) throw std::invalid_argument("Gridworld: dimensions must be positive");
    if (num_features < 1) throw std::invalid_argument("Gridworld: need at least one feature");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("Gridworld: discount must be in [0, 1)");
    if (features_.size() != static_cast<std::size_t>(num_states()) * num_features_)
        throw std::invalid_argument("Gridworld: feature matrix has " + std::to_string(features_.size()) +
                                    " entries, expected " + std::to_string(num_states() * num_features_));
    for (auto f : features_)
        if (f > 1) throw std::invalid_argument("Gridworld: features must be binary");

    next_.resize(static_cast<std::size_t>(num_states()) * kNumMoves);
    for (int s = 0; s < num_states(); ++s) {
        const int r = s / width_;
        const int c = s % width_;
        next_[s * kNumMoves + static_cast<int>(Move::Up)] = r > 0 ? s - width_ : s;
        next_[s * kNumMoves + static_cast<int>(Move::Down)] = r + 1 < height_ ? s + width_ : s;
        next_[s * kNumMoves + static_cast<int>(Move::Left)] = c > 0 ? s - 1 : s;
        next_[s * kNumMoves + static_cast<int>(Move::Right)] = c + 1 < width_ ? s + 1 : s;
    }
}

Gridworld Gridworld::random(Rng& rng, int width, int height, int num_features, double gamma) {
    const int n = width * height;
    if (n < 2) throw std::invalid_argument("Gridworld::random: need at least two states for non-constant features");
    std::vector<std::uint8_t> f(static_cast<std::size_t>(n) * num_features);
    for (;;) {
        for (auto& v : f) v = static_cast<std::uint8_t>(rng() >> 63);
        bool ok = true;
        for (int k = 0; k < num_features && ok; ++k) {
            int ones = 0;
            for (int s = 0; s < n; ++s) ones += f[static_cast<std::size_t>(s) * num_features + k];
            ok = ones > 0 && ones < n;
        }
        if (ok) break;
    }
    return Gridworld(width, height, num_features, std::move(f), gamma);
}

double Gridworld::reward(int state, std::span<const double> theta) const {
    const auto f = features(state);
    double r = 0.0;
    for (int k = 0; k < num_features_; ++k)
        if (f[k]) r += theta[k];
    return r;
}

std::vector<double> Gridworld::rewards(std::span<const double> theta) const {
    std::vector<double> r(num_states());
    rewards(theta, r);
    return r;
}

void Gridworld::rewards(std::span<const double> theta, std::span<double> out) const {
    if (theta.size() != static_cast<std::size_t>(num_features_))
        throw std::invalid_argument("Gridworld: reward weights have wrong dimension");
    for (int s = 0; s < num_states(); ++s) out[s] = reward(s, theta);
}

}  // namespace stratlab::irl
