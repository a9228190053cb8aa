#include "ftl/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftl/errors.hpp"
#include "ftl/summation.hpp"

namespace ftl {

namespace {

double sample_max_char_speed(const VelocityModel& m) {
    // f'(rho) = v(rho) + rho v'(rho); |f'| <= max(1, lip) but the actual
    // maximum is what the CFL condition wants.
    double best = 0.0;
    constexpr int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double rho = static_cast<double>(i) / n;
        best = std::max(best, std::abs(m.eval(rho) + rho * m.deriv(rho)));
    }
    return best;
}

}  // namespace

VelocityModel greenshields() {
    VelocityModel m;
    m.kind = VelocityModel::Kind::greenshields;
    m.p = 1.0;
    m.lip = 1.0;
    m.argmax_flux = 0.5;
    m.max_char_speed = 1.0;  // f' = 1 - 2 rho
    m.name = "greenshields";
    return m;
}

VelocityModel power_law(double p) {
    if (!(p >= 1.0))
        throw config_error("power_law: exponent must satisfy p >= 1 "
                           "(derivative unbounded near rho = 1 otherwise)");
    VelocityModel m;
    m.kind = VelocityModel::Kind::power;
    m.p = p;
    m.lip = p;  // |v'| = p (1-rho)^{p-1}, maximal at rho = 0
    m.argmax_flux = 1.0 / (1.0 + p);
    m.max_char_speed = std::max(1.0, sample_max_char_speed(m));
    m.name = "power:" + std::to_string(p);
    return m;
}

VelocityModel velocity_model_by_name(const std::string& name) {
    if (name == "greenshields") return greenshields();
    if (name.rfind("power:", 0) == 0) {
        try {
            return power_law(std::stod(name.substr(6)));
        } catch (const std::invalid_argument&) {
            throw config_error("velocity model: cannot parse exponent in '" + name + "'");
        }
    }
    throw config_error("velocity model: unknown name '" + name +
                       "' (expected 'greenshields' or 'power:<p>')");
}

double lagrangian_velocity(const VelocityModel& m, double y) {
    if (!(y >= 1.0))
        throw config_error("lagrangian velocity: spacing y < 1 means density above jam");
    return m.eval(1.0 / y);
}

double flux(const VelocityModel& m, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw config_error("flux: density outside [0,1]");
    return rho * m.eval(rho);
}

void WeightProfile::validate() const {
    if (N < 1) throw config_error("weights: N must be a positive integer");
    if (c.size() != static_cast<std::size_t>(N) + 1)
        throw config_error("weights: need exactly N+1 coefficients c_0..c_N");
    if (c.back() != 0.0)
        throw config_error("weights: c_N must be exactly 0");
    for (int j = 0; j + 1 < N; ++j)
        if (c[static_cast<std::size_t>(j)] < c[static_cast<std::size_t>(j) + 1])
            throw config_error("weights: coefficients must be non-increasing "
                               "(c_0 >= c_1 >= ... >= c_{N-1})");
    for (double cj : c)
        if (cj < 0.0) throw config_error("weights: coefficients must be nonnegative");
    const double sum = pairwise_sum(c);
    if (std::abs(sum - 1.0) > 1e-12)
        throw config_error("weights: coefficients must sum to 1 (got " +
                           std::to_string(sum) + ")");
    if (kappa < 0.0)
        throw config_error("weights: rear-coupling kappa must be nonnegative");
}

WeightProfile uniform_weights(int n, double kappa) {
    if (n < 1) throw config_error("weights: uniform:<n> needs n >= 1");
    WeightProfile w;
    w.N = n;
    w.c.assign(static_cast<std::size_t>(n) + 1, 1.0 / n);
    w.c.back() = 0.0;
    w.kappa = kappa;
    w.validate();
    return w;
}

WeightProfile weights_by_name(const std::string& scheme, double kappa) {
    if (scheme.rfind("uniform:", 0) == 0) {
        try {
            return uniform_weights(std::stoi(scheme.substr(8)), kappa);
        } catch (const std::invalid_argument&) {
            throw config_error("weights: cannot parse 'uniform:<n>' count in '" + scheme + "'");
        }
    }
    // explicit comma list c_0,...,c_N
    WeightProfile w;
    w.kappa = kappa;
    std::size_t pos = 0;
    while (pos <= scheme.size()) {
        const std::size_t comma = scheme.find(',', pos);
        const std::string tok =
            scheme.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            w.c.push_back(std::stod(tok));
        } catch (...) {
            throw config_error("weights: cannot parse coefficient '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (w.c.size() < 2)
        throw config_error("weights: explicit list needs at least c_0 and the trailing 0");
    w.N = static_cast<int>(w.c.size()) - 1;
    w.validate();
    return w;
}

namespace {

double sgn(double s) { return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0); }

// Composite Simpson for int_a^b g; n is rounded up to an even subinterval
// count.
template <typename G>
double simpson(G&& g, double a, double b, int nodes) {
    int n = std::max(2, nodes - 1);
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double s = g(a) + g(b);
    for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    return s * h / 3.0;
}

template <typename G>
double adaptive_simpson_rec(G& g, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson to ~1e-12; resolves the narrow transition of the smoothed
// Kruzkov derivative without a prescribed node count.
template <typename G>
double adaptive_simpson(G&& g, double a, double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(g, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

EntropyPair kruzkov_pair(const VelocityModel& m, double k) {
    EntropyPair p;
    p.name = "kruzkov_" + std::to_string(k);
    p.k = k;
    p.eta = [k](double s) { return std::abs(s - k); };
    p.eta_prime = [k](double s) { return sgn(s - k); };
    p.flux_eulerian = [m, k](double rho) {
        return sgn(rho - k) * (flux(m, rho) - flux(m, k));
    };
    p.flux_lagrangian = [m, k](double y) {
        return sgn(y - k) * (lagrangian_velocity(m, y) - lagrangian_velocity(m, k));
    };
    return p;
}

EntropyPair smoothed_kruzkov_pair(const VelocityModel& m, double k, double delta) {
    EntropyPair p;
    p.name = "kruzkov_smoothed_" + std::to_string(k);
    p.k = k;
    p.eta = [k, delta](double s) {
        return std::sqrt((s - k) * (s - k) + delta * delta) - delta;
    };
    p.eta_prime = [k, delta](double s) {
        return (s - k) / std::sqrt((s - k) * (s - k) + delta * delta);
    };
    auto etap = p.eta_prime;
    p.flux_eulerian = [m, etap](double rho) {
        return adaptive_simpson([&](double s) {
            return etap(s) * (m.eval(s) + s * m.deriv(s));
        }, 0.0, rho);
    };
    p.flux_lagrangian = [m, etap](double y) {
        return adaptive_simpson(
            [&](double s) { return etap(s) * m.deriv_spacing(s); }, 1.0, y);
    };
    return p;
}

EntropyPair quadratic_pair(const VelocityModel& m) {
    EntropyPair p;
    p.name = "square";
    p.eta = [](double s) { return s * s; };
    p.eta_prime = [](double s) { return 2.0 * s; };
    p.flux_eulerian = [m](double rho) {
        return adaptive_simpson([&](double s) {
            return 2.0 * s * (m.eval(s) + s * m.deriv(s));
        }, 0.0, rho);
    };
    p.flux_lagrangian = [m](double y) {
        return adaptive_simpson(
            [&](double s) { return 2.0 * s * m.deriv_spacing(s); }, 1.0, y);
    };
    return p;
}

double entropy_dissipation(const EntropyPair& pair, const VelocityModel& m,
                           double a, double b, int nodes) {
    if (!(a >= 1.0 && b >= 1.0))
        throw config_error("entropy dissipation: spacing arguments must be >= 1");
    if (a == b) return 0.0;
    const double eta_prime_a = pair.eta_prime(a);
    return simpson([&](double s) {
        return (pair.eta_prime(s) - eta_prime_a) * m.deriv_spacing(s);
    }, a, b, nodes);
}

}  // namespace ftl
