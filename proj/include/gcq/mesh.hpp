#pragma once

#include <string_view>
#include <vector>

namespace gcq {

/// Strictly increasing time grid 0 = t_0 < t_1 < ... < t_N with cached
/// step sizes. Immutable after construction.
class TimeMesh {
public:
    explicit TimeMesh(std::vector<double> points);

    /// Number of steps N (one less than the number of points).
    int step_count() const { return static_cast<int>(steps_.size()); }
    double horizon() const { return points_.back(); }

    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& steps() const { return steps_; }

    /// Grid point t_j, 0 <= j <= N.
    double point(int j) const { return points_[static_cast<std::size_t>(j)]; }
    /// Step size Delta_j = t_j - t_{j-1}, 1 <= j <= N.
    double step(int j) const { return steps_[static_cast<std::size_t>(j - 1)]; }

private:
    std::vector<double> points_;
    std::vector<double> steps_;
};

struct MeshStats {
    double delta_min;
    double delta_max;
    int count;
};

/// Algebraically graded mesh t_j = T * (j / N)^alpha, j = 0..N.
TimeMesh graded_mesh(int N, double alpha, double T);

/// Uniform mesh with N steps on [0, T].
TimeMesh uniform_mesh(int N, double T);

MeshStats mesh_stats(const TimeMesh& mesh);

/// Parses "uniform:N" or "graded:alpha:N" into a mesh on [0, T].
TimeMesh parse_mesh_spec(std::string_view spec, double T);

}  // namespace gcq
