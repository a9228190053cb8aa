#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace ftl {

// A non-increasing Lipschitz velocity law v: [0,1] -> [0,1] with v(0)=1 and
// v(1)=0. Two families are provided; both keep eval()/deriv() inlinable so
// the stencil kernels stay cheap.
struct VelocityModel {
    enum class Kind { greenshields, power };

    Kind kind = Kind::greenshields;
    double p = 1.0;           // exponent of the power family
    double lip = 1.0;         // Lipschitz constant ||v'||_inf
    double argmax_flux = 0.5; // the maximizer of f(rho) = rho v(rho) on [0,1]
    double max_char_speed = 1.0;  // max |f'| on [0,1], used for CFL bounds
    std::string name = "greenshields";

    double eval(double rho) const {
        if (kind == Kind::greenshields) return 1.0 - rho;
        return std::pow(1.0 - rho, p);
    }
    // One-sided at the endpoints.
    double deriv(double rho) const {
        if (kind == Kind::greenshields) return -1.0;
        return -p * std::pow(1.0 - rho, p - 1.0);
    }
    // Spacing form V(y) = v(1/y) on [1, inf); non-decreasing.
    double eval_spacing(double y) const { return eval(1.0 / y); }
    double deriv_spacing(double y) const { return -deriv(1.0 / y) / (y * y); }
};

VelocityModel greenshields();
// v(rho) = (1-rho)^p, p >= 1 so the derivative stays bounded on [0,1].
VelocityModel power_law(double p);
// Build from a config name: "greenshields" or "power:<p>".
VelocityModel velocity_model_by_name(const std::string& name);

// V(y) = v(1/y) for spacings y >= 1. Throws config_error for y < 1 (density
// above jam).
double lagrangian_velocity(const VelocityModel& m, double y);

// LWR flux f(rho) = rho v(rho). Throws config_error outside [0,1].
double flux(const VelocityModel& m, double rho);

// Anticipation weights c_0..c_N plus the rear-coupling strength kappa.
// Invariants: sum c_j = 1, c_0 >= c_1 >= ... >= c_{N-1} >= 0, c_N = 0.
// kappa = 0 is admitted (the packaged two-jump demo uses it) even though the
// general theory assumes kappa > 0.
struct WeightProfile {
    int N = 1;
    std::vector<double> c;  // size N+1, c[N] == 0
    double kappa = 0.0;

    // Throws config_error naming the violated invariant.
    void validate() const;
};

// c_j = 1/n for j < n, with N = n and c_N = 0.
WeightProfile uniform_weights(int n, double kappa = 0.0);
// Parse "uniform:<n>" or an explicit comma list (which must end with 0).
WeightProfile weights_by_name(const std::string& scheme, double kappa);

// Convex entropy together with its flux in both coordinate systems:
// q' = eta' * f' in density variables, Q' = eta' * V' in spacing variables.
// The Kruzkov family stores its own reference level k; q is meaningful for
// k in [0,1], Q for k >= 1, and each evaluation checks its side.
struct EntropyPair {
    std::string name;
    double k = 0.0;
    std::function<double(double)> eta;
    std::function<double(double)> eta_prime;
    std::function<double(double)> flux_eulerian;    // q(rho)
    std::function<double(double)> flux_lagrangian;  // Q(y)
};

// eta(s) = |s-k|, q(rho) = sign(rho-k)(f(rho)-f(k)),
// Q(y) = sign(y-k)(V(y)-V(k)).
EntropyPair kruzkov_pair(const VelocityModel& m, double k);

// C^2 stand-in for |s-k|: eta(s) = sqrt((s-k)^2 + delta^2) - delta.
EntropyPair smoothed_kruzkov_pair(const VelocityModel& m, double k,
                                  double delta = 1e-3);

// eta(s) = s^2; fluxes integrated by quadrature from their defining ODEs.
EntropyPair quadratic_pair(const VelocityModel& m);

// Entropy dissipation kernel
//   H(a,b) = integral_a^b (eta'(s) - eta'(a)) V'(s) ds,
// nonnegative for convex eta since V is non-decreasing. Composite-Simpson
// quadrature with `nodes` points; a, b >= 1.
double entropy_dissipation(const EntropyPair& pair, const VelocityModel& m,
                           double a, double b, int nodes = 10000);

}  // namespace ftl
