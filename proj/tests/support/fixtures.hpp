#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "isoclouds/geometry.hpp"
#include "isoclouds/invariants.hpp"

namespace fixtures {

using isoclouds::PointCloud;

// Trapezoid and kite sharing the distances sqrt2, sqrt2, 2, sqrt10, sqrt10, 4.
PointCloud trapezoid_t();
PointCloud kite_k();
// Right triangle p1 = (0,0), p2 = (4,0), p3 = (0,3) and its x-axis mirror.
PointCloud triangle_r();
PointCloud triangle_r_bar();
// Square {(1,0), (0,1), (-1,0), (0,-1)}.
PointCloud square_s();

// Published ORD lists of T and K, one basis distance and
// two columns (d1, d2, sign) each. Strengths are filled in from the
// distances. Not canonicalized.
std::vector<isoclouds::RelativeForm> printed_ords_t();
std::vector<isoclouds::RelativeForm> printed_ords_k();

PointCloud random_cloud(std::mt19937_64& rng, std::size_t m, std::size_t n, double scale = 1.0);

// Every point moved by at most eps in a uniformly random direction.
PointCloud perturb(const PointCloud& cloud, double eps, std::mt19937_64& rng);

// Rigid motion (or reflection) of the cloud with its points shuffled.
PointCloud moved_copy(const PointCloud& cloud, isoclouds::Orientation orientation, std::mt19937_64& rng);

}  // namespace fixtures
