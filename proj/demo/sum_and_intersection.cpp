// Identify two autonomous systems from short trajectories, then add and intersect them.

#include <behalg/behalg.hpp>

#include <iomanip>
#include <iostream>
#include <random>

using namespace behalg;

namespace {

// y(t + d) = -(a_0 y(t) + ... + a_{d-1} y(t + d - 1)) / a_d
Trajectory free_response(const Poly& a, Index T, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    const int d = a.degree();
    Matrix y(T, 1);
    for (int t = 0; t < d; ++t) y(t, 0) = normal(gen);
    for (Index t = d; t < T; ++t) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s -= a[k] * y(t - d + k, 0);
        y(t, 0) = s / a[d];
    }
    return Trajectory(y);
}

void print_descending(const char* label, const MatPoly& r) {
    std::cout << label;
    for (int k = r.degree(); k >= 0; --k) std::cout << ' ' << std::setw(8) << r.coeff(k)(0, 0);
    std::cout << "\n  poles:";
    for (const Complex& z : poles(r)) std::cout << ' ' << z.real();
    std::cout << '\n';
}

}  // namespace

int main() {
    std::cout << std::fixed << std::setprecision(4);
    std::mt19937_64 gen(7);

    const Poly a1 = Poly::from_roots(std::vector<double>{-1.1, 0.1, 1.0});
    const Poly a2 = Poly::from_roots(std::vector<double>{-0.5, -0.2, 1.0});
    const Trajectory y1 = free_response(a1, 21, gen);
    const Trajectory y2 = free_response(a2, 21, gen);

    const Complexity c1 = complexity_from_trajectory(y1);
    std::cout << "y1: m=" << c1.m << " n=" << c1.n << " p=" << c1.p << '\n';

    const Behavior b1 = Behavior::from_kernel(kernel_from_data(y1));
    const Behavior b2 = Behavior::from_kernel(kernel_from_data(y2));
    print_descending("R1 (descending):", *b1.kernel());
    print_descending("R2 (descending):", *b2.kernel());

    // The sum is identified both from data and algebraically.
    print_descending("R(y1 + y2) from data:", kernel_from_data(y1 + y2));
    const OpResult sum = sum_kernel(b1, b2);
    print_descending("R1 + R2 by common annihilators:", *sum.behavior.kernel());
    std::cout << "  window L = " << sum.chosen_L << '\n';

    const OpResult cap = intersect_kernel(b1, b2);
    print_descending("R1 cap R2:", *cap.behavior.kernel());

    std::cout << "lcm: " << scalar_autonomous_sum(a1, a2).coeffs().reverse().transpose() << '\n';
    std::cout << "gcd: " << scalar_autonomous_intersection(a1, a2).coeffs().reverse().transpose() << '\n';
    return 0;
}
