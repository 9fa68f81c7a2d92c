#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

// Classical Lorenz system: equilibria, spectra, adaptive integration with
// event detection, the two-parameter heteroclinic (T-point) shooting problem,
// and assembly of the closed invariant curve through a large sphere.

namespace trefoil {

using Vec3 = Eigen::Vector3d;

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;
    void validate() const;  // all positive
};

Vec3 lorenz_field(const Vec3& s, const LorenzParams& p);
Eigen::Matrix3d lorenz_jacobian(const Vec3& s, const LorenzParams& p);

// Origin and (for rho > 1) C+- = (+-sqrt(beta(rho-1)), same, rho-1).
std::vector<Vec3> equilibria(const LorenzParams& p);
Vec3 c_plus(const LorenzParams& p);

struct OriginSpectrum {
    double lambda1, lambda2, lambda3;  // lambda1 > 0 > lambda2 > lambda3 when ordering_ok
    bool ordering_ok;  // lambda3 < lambda2 < 0 < lambda1 + lambda2 < lambda1
};
OriginSpectrum eigen_origin(const LorenzParams& p);

struct FocusSpectrum {
    double real_eig = 0.0;
    std::complex<double> pair;  // the member with positive imaginary part
    Vec3 real_eigvec;           // unit
    bool saddle_focus = false;  // real < 0, Re(pair) > 0
};
FocusSpectrum eigen_cplus(const LorenzParams& p);

// --- integration ---------------------------------------------------------

struct IntegratorStats {
    long accepted = 0;
    long rejected = 0;
    double max_error = 0.0;  // largest accepted scaled error estimate
};

struct Trajectory {
    std::vector<std::array<double, 4>> samples;  // (t, x, y, z)
    IntegratorStats stats;
    bool event_hit = false;
    int event_index = -1;
    double event_time = 0.0;
    Vec3 event_state = Vec3::Zero();
    Vec3 final_state = Vec3::Zero();
    double final_time = 0.0;
};

using EventFn = std::function<double(double, const Vec3&)>;

struct IntegrateOptions {
    double tol = 1e-10;       // relative tolerance; absolute = tol * 1e-2
    double max_step = 1.0;
    bool record = true;
    std::vector<EventFn> events;  // any sign change terminates the run
};

// Dormand-Prince 5(4); T may be negative (backward time).  Throws
// std::runtime_error on step underflow.
Trajectory integrate(const Vec3& y0, const LorenzParams& p, double T,
                     const IntegrateOptions& opt = {});

// --- separatrices and the T-point ----------------------------------------

// Unit unstable eigenvector at the origin, x-component positive.
Vec3 unstable_direction(const LorenzParams& p);

Trajectory unstable_separatrix(const LorenzParams& p, int branch, double eps,
                               double T, const IntegrateOptions& opt = {});
// Backward orbit from C+ offset by sign*eps along the real stable direction.
// Throws std::runtime_error unless the spectrum is saddle-focus.
Trajectory stable_separatrix_cplus(const LorenzParams& p, int sign, double eps,
                                   double T, const IntegrateOptions& opt = {});

struct MissResult {
    Eigen::Vector2d miss;  // (x, y) gap on the plane z = rho - 1
    int branch_sign;       // which stable-seed sign matched
    double t_unstable, t_stable;
};
// nullopt when a separatrix never reaches the section plane.
std::optional<MissResult> miss_distance(const LorenzParams& p, double eps = 1e-7,
                                        double tol = 1e-10);

struct TPointResult {
    LorenzParams params;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
};
TPointResult find_tpoint(const LorenzParams& initial, double tol = 1e-9,
                         double integ_tol = 1e-10);

// rho at which the complex pair at C+- crosses the imaginary axis:
// sigma(sigma+beta+3)/(sigma-beta-1).  Throws unless sigma > beta+1.
double hopf_threshold(double sigma, double beta);
// Independent check: bisection on Re(pair) as a function of rho.
double hopf_threshold_bisection(double sigma, double beta, double tol = 1e-8);

// --- the closed curve through infinity -----------------------------------

struct Polyline3 {
    std::vector<Vec3> points;
    bool closed = false;
};

struct TrefoilOptions {
    double r_inf = 500.0;     // closure sphere radius
    double truncate = 1e-4;   // arrival distance at C-+
    double eps = 1e-7;        // separatrix seed offset
    double tol = 1e-10;
    double max_step = 0.005;  // keeps the vertex count high
    int closure_samples = 200;
};

// Heteroclinic arcs plus closure arcs through the sphere of radius r_inf.
// Throws std::runtime_error("not at T-point") if the separatrix fails to
// approach C- within the truncation distance.
Polyline3 assemble_trefoil(const LorenzParams& p, const TrefoilOptions& opt = {});

}  // namespace trefoil
