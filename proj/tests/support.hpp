#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rotor/types.hpp"

namespace testing {

inline rotor::MatrixXc random_hermitian(int n, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    rotor::MatrixXc a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            a(i, j) = {g(rng), g(rng)};
    return (a + a.adjoint()) / 2.0;
}

inline rotor::MatrixXc random_unitary(int n, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    rotor::MatrixXc a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            a(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<rotor::MatrixXc> qr(a);
    return qr.householderQ() * rotor::MatrixXc::Identity(n, n);
}

// Greedy match of two phase multisets on the circle; largest matched distance.
inline double multiset_distance(std::vector<double> a, std::vector<double> b)
{
    if (a.size() != b.size())
        return 1e300;
    std::vector<bool> used(b.size(), false);
    double worst = 0;
    for (double x : a) {
        std::size_t best = b.size();
        double dist = 1e300;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && rotor::circular_distance(x, b[j]) < dist) {
                dist = rotor::circular_distance(x, b[j]);
                best = j;
            }
        used[best] = true;
        worst = std::max(worst, dist);
    }
    return worst;
}

} // namespace testing
