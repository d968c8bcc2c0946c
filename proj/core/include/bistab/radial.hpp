#pragma once

// Radial test profiles with closed-form derivatives through order four,
// and the radial differential operators needed by the identity audits.
// Closed forms (not automatic differentiation) keep fourth derivatives of
// bump functions tolerance-tight.

#include <memory>
#include <string>
#include <utility>

namespace bistab {

struct Derivs {
    double f = 0, d1 = 0, d2 = 0, d3 = 0, d4 = 0;
};

namespace detail {
class ProfileImpl;
}

// Immutable value handle; copying shares the underlying definition.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::shared_ptr<const detail::ProfileImpl> impl) : impl_(std::move(impl)) {}

    Derivs derivs(double r) const;
    double value(double r) const { return derivs(r).f; }
    // [lo, hi]; hi may be +inf. Outside, the profile evaluates to its
    // natural extension (0 for bumps, the offset for shifted profiles).
    std::pair<double, double> support() const;
    // f^s, using the family's closed form where one exists.
    Profile pow(double s) const;
    Profile scaled(double c) const;
    std::string name() const;
    bool valid() const { return impl_ != nullptr; }
    const std::shared_ptr<const detail::ProfileImpl>& impl() const { return impl_; }

private:
    std::shared_ptr<const detail::ProfileImpl> impl_;
};

namespace profiles {

// amp * exp(-rate r^2)
Profile gaussian(double amp, double rate);
// amp * (1 + r^2)^(-k)
Profile inverse_power(double amp, double k);
// amp * exp(beta (1 - 1/(1 - (r/R)^2))) for r < R, 0 outside; value amp at 0
Profile exp_bump(double amp, double beta, double radius);
// amp * (1 - (r/R)^2)^k for r < R, 0 outside
Profile poly_bump(double amp, double radius, double k);
// 1 on [0, a], C^4 descent to 0 on (a, R)
Profile plateau_bump(double plateau_radius, double outer_radius);
// L r^(-alpha), truncated to [r_lo, r_hi]
Profile homogeneous(double L, double alpha, double r_lo, double r_hi);
// r^c * bump(log(r)/T): supported on [exp(-T), exp(T)]
Profile log_annulus(double c, double T, double beta);
// base + offset
Profile shifted(const Profile& base, double offset);
// the constant function (used by degenerate probes)
Profile constant(double value);

}  // namespace profiles

struct RadialCalculus {
    double f = 0;        // f
    double d1 = 0;       // f'
    double lap = 0;      // f'' + (n-1) f'/r
    double bilap = 0;    // Laplacian applied twice
    double grad_sq = 0;  // |grad f|^2 = f'^2
    double hess_sq = 0;  // |hess f|^2 = f''^2 + (n-1)(f'/r)^2
};

// r must lie inside the profile's support and be positive.
RadialCalculus radial_calculus(const Profile& p, double r, int n);

// The same operators on a raw derivative record.
double laplacian(const Derivs& d, double r, int n);
double bilaplacian(const Derivs& d, double r, int n);
// Radial derivative of the Laplacian, (lap f)'. Needed by identities that
// integrate grad(lap phi^gamma) terms.
double lap_derivative(const Derivs& d, double r, int n);

// sqrt( phi^{-2g} |grad phi^g|^4 + |phi^g lap^2 phi^g| + |hess phi^g|^2 ).
// Degenerates where phi vanishes; such radii are rejected.
double grad4_norm(const Profile& phi, double gamma, double r, int n);

}  // namespace bistab
