#pragma once

#include <vector>

#include "hsjump/kernel.hpp"

namespace hsjump {

// Finite-volume collocation of the generator on a graded one-dimensional
// grid, exterior Dirichlet condition, dense solve for the killed Green
// function. Two domain modes:
//   HalfLine:  D = (0, R) inside the state space (0, inf); jumps to [R, inf)
//              enter the diagonal as exit mass, the boundary at 0 is carried
//              by the model itself (resurrection B / killing).
//   Interval:  D = (-1, 1) for the isotropic stable process on R with B = 1;
//              calibration case with a closed-form oracle.
struct GreenSystem {
    enum class Domain { HalfLine, Interval };
    Domain domain = Domain::HalfLine;
    KernelSpec spec;
    double R = 1.0;
    int n = 0;
    std::vector<double> edges;    // n + 1
    std::vector<double> x;        // collocation midpoints
    std::vector<double> w;        // cell widths
    std::vector<double> A;        // dense n^2, row-major: discretized -L^B
    std::vector<double> G;        // Green matrix, G[i*n+j] = G(x_i, x_j)

    double a_at(int i, int j) const { return A[(size_t)i * n + j]; }
    double green(int i, int j) const { return G[(size_t)i * n + j]; }
};

// grading exponent s: cell edges ~ R (i/n)^s toward the boundary
GreenSystem assemble(const KernelSpec& spec, double R, int n_cells, double grading = 2.0);
GreenSystem assemble_interval_stable(double alpha, int n_cells, double grading = 2.0);

// factorize and fill G; throws on singular systems
void solve(GreenSystem& sys);

// int_D G(x_i, y) y^gamma dy by a single linear solve
std::vector<double> green_potential(const GreenSystem& sys, double gamma);

// P_x(exit alive through [R, inf)) per grid point, from the same matrix
std::vector<double> exit_alive_probability(const GreenSystem& sys);
// P_x(killed by the kappa-clock before exiting)
std::vector<double> killed_probability(const GreenSystem& sys);

// bilinear log-log interpolation of G at arbitrary interior (x, y)
double green_interp(const GreenSystem& sys, double x, double y);

// d = 1 envelope of the full Green estimates (rows alpha > 1 = d and
// alpha = 1 = d), constants absorbed by the comparability tests
double green_envelope_1d(double alpha, double p, double x, double y);

// exact Green function of the stable process killed off (-1,1)
double interval_stable_green_exact(double alpha, double x, double y);

struct DecayReport {
    double slope = 0.0;
    double r2 = 0.0;
};
// log-log slope of x -> G(x, y_ref) over small x; should match p
DecayReport boundary_decay_check(const GreenSystem& sys, double y_ref, double x_max);

} // namespace hsjump
