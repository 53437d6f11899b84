#include "isoper/crofton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isoper {

const std::array<CroftonDirection, 16>& crofton_directions()
{
    static const std::array<CroftonDirection, 16> dirs = [] {
        const int raw[16][2] = {{1, 0},  {3, 1},  {2, 1},  {3, 2},  {1, 1},   {2, 3},   {1, 2},   {1, 3},
                                {0, 1},  {-1, 3}, {-1, 2}, {-2, 3}, {-1, 1},  {-3, 2},  {-2, 1},  {-3, 1}};
        std::array<CroftonDirection, 16> out{};
        std::array<double, 16> angle{};
        for (int k = 0; k < 16; ++k) {
            out[k] = {raw[k][0], raw[k][1], 0.0};
            angle[k] = std::atan2(raw[k][1], raw[k][0]);
        }
        // Each direction owns half the angular gap to either neighbour (period pi).
        const double pi = std::numbers::pi;
        for (int k = 0; k < 16; ++k) {
            const double prev = k == 0 ? angle[15] - pi : angle[k - 1];
            const double next = k == 15 ? angle[0] + pi : angle[k + 1];
            out[k].weight = 0.5 * (next - prev);
        }
        return out;
    }();
    return dirs;
}

std::array<double, 16> crofton_pair_costs(double cell)
{
    std::array<double, 16> cost{};
    const auto& dirs = crofton_directions();
    for (int k = 0; k < 16; ++k)
        cost[k] = 0.5 * dirs[k].weight * cell / std::hypot(double(dirs[k].dx), double(dirs[k].dy));
    return cost;
}

double crofton_perimeter(const Mask& mask, double cell)
{
    const auto& dirs = crofton_directions();
    const auto cost = crofton_pair_costs(cell);
    const int ny = static_cast<int>(mask.rows());
    const int nx = static_cast<int>(mask.cols());
    const auto at = [&](int i, int j) { return i >= 0 && j >= 0 && i < nx && j < ny && mask(j, i) != 0; };

    double total = 0.0;
    for (int k = 0; k < 16; ++k) {
        const int dx = dirs[k].dx;
        const int dy = dirs[k].dy;
        long count = 0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                if (!mask(j, i)) continue;
                count += !at(i + dx, j + dy);
                count += !at(i - dx, j - dy);
            }
        total += cost[k] * static_cast<double>(count);
    }
    return total;
}

} // namespace isoper
