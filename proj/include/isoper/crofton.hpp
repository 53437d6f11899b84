#pragma once

// Cauchy-Crofton perimeter of a binary cell image. For each lattice
// direction d the number of neighbouring cell pairs (x, x + d) that differ
// counts boundary crossings of the lines through the cell centres along d,
// which are h / |d| apart; weighting by the angular share of d integrates
// P = 1/2 * integral over angle and offset of the crossing count.

#include <array>

#include "isoper/grid.hpp"

namespace isoper {

struct CroftonDirection {
    int dx;
    int dy;
    // Angular weight; the sixteen weights sum to pi.
    double weight;
};

// Primitive lattice vectors with |components| <= 3 covering [0, pi).
const std::array<CroftonDirection, 16>& crofton_directions();

// Per-pair cost c_d = weight / 2 * h / |d| of one differing pair along d.
std::array<double, 16> crofton_pair_costs(double cell);

// Perimeter estimate for mask (rows = y) with square cells of side `cell`.
// Cells beyond the mask count as outside.
double crofton_perimeter(const Mask& mask, double cell);

} // namespace isoper
