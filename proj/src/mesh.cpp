#include "gcq/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcq {

TimeMesh::TimeMesh(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("time mesh needs at least two points");
    }
    if (points_.front() != 0.0) {
        throw std::invalid_argument("time mesh must start at t_0 = 0");
    }
    steps_.reserve(points_.size() - 1);
    for (std::size_t j = 1; j < points_.size(); ++j) {
        const double d = points_[j] - points_[j - 1];
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw std::invalid_argument("time mesh points must be strictly increasing");
        }
        steps_.push_back(d);
    }
}

TimeMesh graded_mesh(int N, double alpha, double T) {
    if (N < 1) throw std::invalid_argument("graded mesh needs N >= 1");
    if (!(alpha >= 1.0)) throw std::invalid_argument("graded mesh needs alpha >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("graded mesh needs T > 0");
    std::vector<double> pts(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
        pts[static_cast<std::size_t>(j)] =
            T * std::pow(static_cast<double>(j) / N, alpha);
    }
    pts.back() = T;  // guard against rounding in pow
    return TimeMesh(std::move(pts));
}

TimeMesh uniform_mesh(int N, double T) { return graded_mesh(N, 1.0, T); }

MeshStats mesh_stats(const TimeMesh& mesh) {
    const auto& steps = mesh.steps();
    const auto [lo, hi] = std::minmax_element(steps.begin(), steps.end());
    return {*lo, *hi, mesh.step_count()};
}

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad integer in mesh spec: " + std::string(text));
    }
    return value;
}

double parse_double(std::string_view text) {
    try {
        std::size_t used = 0;
        const std::string owned(text);
        const double value = std::stod(owned, &used);
        if (used != owned.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number in mesh spec: " + std::string(text));
    }
}

}  // namespace

TimeMesh parse_mesh_spec(std::string_view spec, double T) {
    const auto first = spec.find(':');
    if (first == std::string_view::npos) {
        throw std::invalid_argument("mesh spec must be uniform:N or graded:alpha:N");
    }
    const auto kind = spec.substr(0, first);
    const auto rest = spec.substr(first + 1);
    if (kind == "uniform") {
        return uniform_mesh(parse_int(rest), T);
    }
    if (kind == "graded") {
        const auto second = rest.find(':');
        if (second == std::string_view::npos) {
            throw std::invalid_argument("graded mesh spec must be graded:alpha:N");
        }
        const double alpha = parse_double(rest.substr(0, second));
        const int N = parse_int(rest.substr(second + 1));
        return graded_mesh(N, alpha, T);
    }
    throw std::invalid_argument("unknown mesh kind: " + std::string(kind));
}

}  // namespace gcq
