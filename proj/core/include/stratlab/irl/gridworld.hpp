#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stratlab/rng.hpp"

namespace stratlab::irl {

enum class Move : std::uint8_t { Up, Down, Left, Right };
inline constexpr int kNumMoves = 4;

std::string_view to_string(Move m);

// Deterministic grid MDP with binary state features and linear reward
// R(x, θ) = θ · f(x). Moves off the boundary leave the state unchanged.
// States are numbered row-major from the top-left corner.
class Gridworld {
public:
    // `features` is row-major, num_states × num_features, entries 0 or 1.
    Gridworld(int width, int height, int num_features, std::vector<std::uint8_t> features, double gamma = 0.9);

    // Fair-coin features, redrawn until no feature column is constant.
    static Gridworld random(Rng& rng, int width, int height, int num_features, double gamma = 0.9);

    int width() const { return width_; }
    int height() const { return height_; }
    int num_states() const { return width_ * height_; }
    int num_features() const { return num_features_; }
    double gamma() const { return gamma_; }

    int next(int state, int move) const { return next_[static_cast<std::size_t>(state) * kNumMoves + move]; }
    std::span<const std::uint8_t> features(int state) const {
        return {features_.data() + static_cast<std::size_t>(state) * num_features_,
                static_cast<std::size_t>(num_features_)};
    }
    std::span<const std::uint8_t> feature_matrix() const { return features_; }

    double reward(int state, std::span<const double> theta) const;
    // R(x, θ) for every state.
    std::vector<double> rewards(std::span<const double> theta) const;
    void rewards(std::span<const double> theta, std::span<double> out) const;

private:
    int width_;
    int height_;
    int num_features_;
    double gamma_;
    std::vector<std::uint8_t> features_;
    std::vector<int> next_;
};

}  // namespace stratlab::irl
