#include "bistab/radial.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bistab {
namespace detail {

namespace {
std::string num_str(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

class ProfileImpl : public std::enable_shared_from_this<ProfileImpl> {
public:
    virtual ~ProfileImpl() = default;
    virtual Derivs derivs(double r) const = 0;
    virtual double lo() const { return 0.0; }
    virtual double hi() const { return kInf; }
    virtual std::shared_ptr<const ProfileImpl> pow(double s) const;
    virtual std::string name() const = 0;
};

using ImplPtr = std::shared_ptr<const ProfileImpl>;

namespace {

// Derivatives of amp*e^psi from derivatives of psi (complete Bell forms).
Derivs exp_chain(double amp, const double p[5]) {
    Derivs d;
    const double p1 = p[1], p2 = p[2], p3 = p[3], p4 = p[4];
    d.f = amp * std::exp(p[0]);
    d.d1 = d.f * p1;
    d.d2 = d.f * (p2 + p1 * p1);
    d.d3 = d.f * (p3 + 3 * p2 * p1 + p1 * p1 * p1);
    d.d4 = d.f * (p4 + 4 * p3 * p1 + 3 * p2 * p2 + 6 * p2 * p1 * p1 + p1 * p1 * p1 * p1);
    return d;
}

// Derivatives of f^s from derivatives of f (requires f > 0).
Derivs power_chain(const Derivs& b, double s) {
    double fm4 = std::pow(b.f, s - 4);
    double fm3 = fm4 * b.f;
    double fm2 = fm3 * b.f;
    double fm1 = fm2 * b.f;
    Derivs d;
    d.f = fm1 * b.f;
    d.d1 = s * fm1 * b.d1;
    d.d2 = s * (s - 1) * fm2 * b.d1 * b.d1 + s * fm1 * b.d2;
    d.d3 = s * (s - 1) * (s - 2) * fm3 * b.d1 * b.d1 * b.d1 +
           3 * s * (s - 1) * fm2 * b.d1 * b.d2 + s * fm1 * b.d3;
    d.d4 = s * (s - 1) * (s - 2) * (s - 3) * fm4 * b.d1 * b.d1 * b.d1 * b.d1 +
           6 * s * (s - 1) * (s - 2) * fm3 * b.d1 * b.d1 * b.d2 +
           3 * s * (s - 1) * fm2 * b.d2 * b.d2 + 4 * s * (s - 1) * fm2 * b.d1 * b.d3 +
           s * fm1 * b.d4;
    return d;
}

// Sum of terms c * tau^m * (1-tau^2)^(-j); closed under d/dtau.
struct TermSeries {
    struct Term {
        double c;
        int m;
        int j;
    };
    std::vector<Term> terms;

    TermSeries derivative() const {
        TermSeries out;
        for (const auto& t : terms) {
            if (t.m != 0) out.terms.push_back({t.c * t.m, t.m - 1, t.j});
            if (t.j != 0) out.terms.push_back({2.0 * t.c * t.j, t.m + 1, t.j + 1});
        }
        return out;
    }

    double eval(double tau) const {
        double acc = 0;
        for (const auto& t : terms) {
            double v = t.c;
            for (int i = 0; i < t.m; ++i) v *= tau;
            if (t.j != 0) v *= std::pow(1.0 - tau * tau, -t.j);
            acc += v;
        }
        return acc;
    }
};

// amp * exp(psi(tau)) with tau = (r - shift)/scale; zero outside [lo, hi).
class ExpChainProfile final : public ProfileImpl {
public:
    ExpChainProfile(std::string label, double amp, TermSeries psi, double shift, double scale,
                    double lo, double hi)
        : label_(std::move(label)), amp_(amp), shift_(shift), scale_(scale), lo_(lo), hi_(hi) {
        psi_[0] = std::move(psi);
        for (int k = 1; k <= 4; ++k) psi_[k] = psi_[k - 1].derivative();
    }

    Derivs derivs(double r) const override {
        if (r < lo_ || r >= hi_) return {};
        double tau = (r - shift_) / scale_;
        double p[5];
        double jac = 1.0;
        for (int k = 0; k <= 4; ++k) {
            p[k] = psi_[k].eval(tau) * jac;
            jac /= scale_;
        }
        return exp_chain(amp_, p);
    }

    double lo() const override { return lo_; }
    double hi() const override { return hi_; }

    ImplPtr pow(double s) const override {
        TermSeries scaled = psi_[0];
        for (auto& t : scaled.terms) t.c *= s;
        return std::make_shared<ExpChainProfile>(label_ + "^" + num_str(s), std::pow(amp_, s),
                                                 std::move(scaled), shift_, scale_, lo_, hi_);
    }

    std::string name() const override { return label_; }

private:
    std::string label_;
    double amp_, shift_, scale_, lo_, hi_;
    TermSeries psi_[5];
};

// amp * (c0 + c2 r^2)^k (covers polynomial bumps and inverse powers)
class QuadPowerProfile final : public ProfileImpl {
public:
    QuadPowerProfile(std::string label, double amp, double c0, double c2, double k, double lo,
                     double hi)
        : label_(std::move(label)), amp_(amp), c0_(c0), c2_(c2), k_(k), lo_(lo), hi_(hi) {}

    Derivs derivs(double r) const override {
        // closed at hi: with integer k the one-sided limits at the support
        // edge are finite and needed by the ball boundary terms
        if (r < lo_ || r > hi_) return {};
        double w = c0_ + c2_ * r * r;
        double w1 = 2 * c2_ * r;
        double w2 = 2 * c2_;
        double k = k_;
        Derivs d;
        d.f = amp_ * std::pow(w, k);
        d.d1 = term(k, w, k - 1) * w1;
        d.d2 = term(k * (k - 1), w, k - 2) * w1 * w1 + term(k, w, k - 1) * w2;
        d.d3 = term(k * (k - 1) * (k - 2), w, k - 3) * w1 * w1 * w1 +
               3 * term(k * (k - 1), w, k - 2) * w1 * w2;
        d.d4 = term(k * (k - 1) * (k - 2) * (k - 3), w, k - 4) * w1 * w1 * w1 * w1 +
               6 * term(k * (k - 1) * (k - 2), w, k - 3) * w1 * w1 * w2 +
               3 * term(k * (k - 1), w, k - 2) * w2 * w2;
        return d;
    }

    double lo() const override { return lo_; }
    double hi() const override { return hi_; }

    ImplPtr pow(double s) const override {
        return std::make_shared<QuadPowerProfile>(label_ + "^" + num_str(s), std::pow(amp_, s),
                                                  c0_, c2_, k_ * s, lo_, hi_);
    }

    std::string name() const override { return label_; }

private:
    // coefficient * w^e, skipping the power when the coefficient vanishes
    // (keeps small integer k safe at the support edge)
    double term(double coeff, double w, double e) const {
        if (coeff == 0) return 0;
        return amp_ * coeff * std::pow(w, e);
    }

    std::string label_;
    double amp_, c0_, c2_, k_, lo_, hi_;
};

class HomogeneousProfile final : public ProfileImpl {
public:
    HomogeneousProfile(double L, double alpha, double rlo, double rhi)
        : L_(L), alpha_(alpha), lo_(rlo), hi_(rhi) {}

    Derivs derivs(double r) const override {
        if (r < lo_ || r > hi_) return {};
        Derivs d;
        double v = L_ * std::pow(r, -alpha_);
        d.f = v;
        double c = 1.0;
        double out[4];
        for (int k = 0; k < 4; ++k) {
            c *= -alpha_ - k;
            v /= r;
            out[k] = c * v;
        }
        d.d1 = out[0];
        d.d2 = out[1];
        d.d3 = out[2];
        d.d4 = out[3];
        return d;
    }

    double lo() const override { return lo_; }
    double hi() const override { return hi_; }

    ImplPtr pow(double s) const override {
        return std::make_shared<HomogeneousProfile>(std::pow(L_, s), alpha_ * s, lo_, hi_);
    }

    std::string name() const override { return "homogeneous(alpha=" + num_str(alpha_) + ")"; }

private:
    double L_, alpha_, lo_, hi_;
};

// amp * r^c * B(log(r)/T), B the normalized 1-d bump exp(beta(1 - 1/(1-t^2)))
class LogAnnulusProfile final : public ProfileImpl {
public:
    LogAnnulusProfile(double amp, double c, double T, double beta)
        : amp_(amp), c_(c), T_(T), beta_(beta) {
        bump_[0].terms = {{beta, 0, 0}, {-beta, 0, 1}};
        for (int k = 1; k <= 4; ++k) bump_[k] = bump_[k - 1].derivative();
    }

    Derivs derivs(double r) const override {
        if (r <= lo() || r >= hi()) return {};
        double s = std::log(r);
        double t = s / T_;
        double psi[5];  // derivatives of log B w.r.t. s
        double jac = 1.0;
        for (int k = 0; k <= 4; ++k) {
            psi[k] = bump_[k].eval(t) * jac;
            jac /= T_;
        }
        Derivs B = exp_chain(1.0, psi);
        // G(s) = amp e^{cs} B(s/T)
        double ecs = amp_ * std::exp(c_ * s);
        double G0 = ecs * B.f;
        double G1 = ecs * (c_ * B.f + B.d1);
        double G2 = ecs * (c_ * c_ * B.f + 2 * c_ * B.d1 + B.d2);
        double G3 = ecs * (c_ * c_ * c_ * B.f + 3 * c_ * c_ * B.d1 + 3 * c_ * B.d2 + B.d3);
        double G4 = ecs * (c_ * c_ * c_ * c_ * B.f + 4 * c_ * c_ * c_ * B.d1 +
                           6 * c_ * c_ * B.d2 + 4 * c_ * B.d3 + B.d4);
        // d/dr = e^{-s} d/ds, so d^k/dr^k picks up Stirling weights
        double e1 = 1.0 / r;
        Derivs d;
        d.f = G0;
        d.d1 = e1 * G1;
        d.d2 = e1 * e1 * (G2 - G1);
        d.d3 = e1 * e1 * e1 * (G3 - 3 * G2 + 2 * G1);
        d.d4 = e1 * e1 * e1 * e1 * (G4 - 6 * G3 + 11 * G2 - 6 * G1);
        return d;
    }

    double lo() const override { return std::exp(-T_); }
    double hi() const override { return std::exp(T_); }

    ImplPtr pow(double s) const override {
        return std::make_shared<LogAnnulusProfile>(std::pow(amp_, s), c_ * s, T_, beta_ * s);
    }

    std::string name() const override {
        return "log_annulus(c=" + num_str(c_) + ",T=" + num_str(T_) + ")";
    }

private:
    double amp_, c_, T_, beta_;
    TermSeries bump_[5];
};

// amp on [0,a]; amp * exp(-beta tau^6/(1-tau^2)) on (a,R), tau=(r-a)/(R-a).
// The tau^6 numerator keeps the junction C^4.
class PlateauBumpProfile final : public ProfileImpl {
public:
    PlateauBumpProfile(double a, double R, double amp, double beta)
        : a_(a), R_(R), amp_(amp), beta_(beta) {
        psi_[0].terms = {{-beta, 6, 1}};
        for (int k = 1; k <= 4; ++k) psi_[k] = psi_[k - 1].derivative();
    }

    Derivs derivs(double r) const override {
        if (r >= R_) return {};
        if (r <= a_) return {amp_, 0, 0, 0, 0};
        double scale = R_ - a_;
        double tau = (r - a_) / scale;
        double p[5];
        double jac = 1.0;
        for (int k = 0; k <= 4; ++k) {
            p[k] = psi_[k].eval(tau) * jac;
            jac /= scale;
        }
        return exp_chain(amp_, p);
    }

    double hi() const override { return R_; }

    ImplPtr pow(double s) const override {
        return std::make_shared<PlateauBumpProfile>(a_, R_, std::pow(amp_, s), beta_ * s);
    }

    std::string name() const override {
        return "plateau_bump(" + num_str(a_) + "," + num_str(R_) + ")";
    }

private:
    double a_, R_, amp_, beta_;
    TermSeries psi_[5];
};

class ConstantProfile final : public ProfileImpl {
public:
    explicit ConstantProfile(double v) : v_(v) {}
    Derivs derivs(double) const override { return {v_, 0, 0, 0, 0}; }
    ImplPtr pow(double s) const override {
        return std::make_shared<ConstantProfile>(std::pow(v_, s));
    }
    std::string name() const override { return "constant(" + num_str(v_) + ")"; }

private:
    double v_;
};

class ShiftedProfile final : public ProfileImpl {
public:
    ShiftedProfile(ImplPtr base, double offset) : base_(std::move(base)), offset_(offset) {}

    Derivs derivs(double r) const override {
        Derivs d = base_->derivs(r);
        d.f += offset_;
        return d;
    }

    std::string name() const override { return base_->name() + "+" + num_str(offset_); }

private:
    ImplPtr base_;
    double offset_;
};

class PowerOfProfile final : public ProfileImpl {
public:
    PowerOfProfile(ImplPtr base, double s) : base_(std::move(base)), s_(s) {}

    Derivs derivs(double r) const override {
        Derivs b = base_->derivs(r);
        if (b.f <= 0) throw std::domain_error("profile power: base must be positive at r");
        return power_chain(b, s_);
    }

    double lo() const override { return base_->lo(); }
    double hi() const override { return base_->hi(); }

    ImplPtr pow(double s) const override {
        return std::make_shared<PowerOfProfile>(base_, s_ * s);
    }

    std::string name() const override { return base_->name() + "^" + num_str(s_); }

private:
    ImplPtr base_;
    double s_;
};

class ScaledProfile final : public ProfileImpl {
public:
    ScaledProfile(ImplPtr base, double c) : base_(std::move(base)), c_(c) {}

    Derivs derivs(double r) const override {
        Derivs d = base_->derivs(r);
        d.f *= c_;
        d.d1 *= c_;
        d.d2 *= c_;
        d.d3 *= c_;
        d.d4 *= c_;
        return d;
    }

    double lo() const override { return base_->lo(); }
    double hi() const override { return base_->hi(); }
    std::string name() const override { return num_str(c_) + "*" + base_->name(); }

private:
    ImplPtr base_;
    double c_;
};

}  // namespace

ImplPtr ProfileImpl::pow(double s) const {
    return std::make_shared<PowerOfProfile>(shared_from_this(), s);
}

}  // namespace detail

Derivs Profile::derivs(double r) const { return impl_->derivs(r); }

std::pair<double, double> Profile::support() const { return {impl_->lo(), impl_->hi()}; }

Profile Profile::pow(double s) const { return Profile(impl_->pow(s)); }

Profile Profile::scaled(double c) const {
    return Profile(std::make_shared<detail::ScaledProfile>(impl_, c));
}

std::string Profile::name() const { return impl_->name(); }

namespace profiles {

Profile gaussian(double amp, double rate) {
    if (amp <= 0 || rate <= 0) throw std::invalid_argument("gaussian: amp, rate > 0");
    detail::TermSeries psi;
    psi.terms = {{-rate, 2, 0}};
    return Profile(std::make_shared<detail::ExpChainProfile>(
        "gaussian", amp, std::move(psi), 0.0, 1.0, 0.0, detail::kInf));
}

Profile inverse_power(double amp, double k) {
    if (amp <= 0 || k <= 0) throw std::invalid_argument("inverse_power: amp, k > 0");
    return Profile(std::make_shared<detail::QuadPowerProfile>(
        "inverse_power(k=" + detail::num_str(k) + ")", amp, 1.0, 1.0, -k, 0.0, detail::kInf));
}

Profile exp_bump(double amp, double beta, double radius) {
    if (amp <= 0 || beta <= 0 || radius <= 0)
        throw std::invalid_argument("exp_bump: amp, beta, radius > 0");
    detail::TermSeries psi;
    psi.terms = {{beta, 0, 0}, {-beta, 0, 1}};
    return Profile(std::make_shared<detail::ExpChainProfile>(
        "exp_bump(R=" + detail::num_str(radius) + ")", amp, std::move(psi), 0.0, radius, 0.0,
        radius));
}

Profile poly_bump(double amp, double radius, double k) {
    if (amp <= 0 || radius <= 0 || k < 1)
        throw std::invalid_argument("poly_bump: amp, radius > 0 and k >= 1");
    return Profile(std::make_shared<detail::QuadPowerProfile>(
        "poly_bump(R=" + detail::num_str(radius) + ",k=" + detail::num_str(k) + ")", amp, 1.0,
        -1.0 / (radius * radius), k, 0.0, radius));
}

Profile plateau_bump(double plateau_radius, double outer_radius) {
    if (!(0 < plateau_radius && plateau_radius < outer_radius))
        throw std::invalid_argument("plateau_bump: 0 < a < R");
    return Profile(
        std::make_shared<detail::PlateauBumpProfile>(plateau_radius, outer_radius, 1.0, 1.0));
}

Profile homogeneous(double L, double alpha, double r_lo, double r_hi) {
    if (L <= 0 || !(0 < r_lo && r_lo < r_hi))
        throw std::invalid_argument("homogeneous: L > 0 and 0 < r_lo < r_hi");
    return Profile(std::make_shared<detail::HomogeneousProfile>(L, alpha, r_lo, r_hi));
}

Profile log_annulus(double c, double T, double beta) {
    if (T <= 0 || beta <= 0) throw std::invalid_argument("log_annulus: T, beta > 0");
    return Profile(std::make_shared<detail::LogAnnulusProfile>(1.0, c, T, beta));
}

Profile shifted(const Profile& base, double offset) {
    return Profile(std::make_shared<detail::ShiftedProfile>(base.impl(), offset));
}

Profile constant(double value) {
    return Profile(std::make_shared<detail::ConstantProfile>(value));
}

}  // namespace profiles

double laplacian(const Derivs& d, double r, int n) {
    return d.d2 + (n - 1) * d.d1 / r;
}

double bilaplacian(const Derivs& d, double r, int n) {
    double nm1 = n - 1;
    return d.d4 + 2 * nm1 * d.d3 / r + nm1 * (n - 3) * (d.d2 / (r * r) - d.d1 / (r * r * r));
}

double lap_derivative(const Derivs& d, double r, int n) {
    return d.d3 + (n - 1) * (d.d2 / r - d.d1 / (r * r));
}

RadialCalculus radial_calculus(const Profile& p, double r, int n) {
    if (r <= 0) throw std::domain_error("radial_calculus: r must be positive");
    if (n < 5) throw std::invalid_argument("radial_calculus: n >= 5");
    auto [lo, hi] = p.support();
    if (r < lo || r > hi) throw std::domain_error("radial_calculus: r outside support");
    Derivs d = p.derivs(r);
    RadialCalculus out;
    out.f = d.f;
    out.d1 = d.d1;
    out.lap = laplacian(d, r, n);
    out.bilap = bilaplacian(d, r, n);
    out.grad_sq = d.d1 * d.d1;
    out.hess_sq = d.d2 * d.d2 + (n - 1) * (d.d1 / r) * (d.d1 / r);
    return out;
}

double grad4_norm(const Profile& phi, double gamma, double r, int n) {
    double phi_val = phi.derivs(r).f;
    if (phi_val <= 0) throw std::domain_error("grad4_norm: phi must be positive at r");
    Profile b = phi.pow(gamma);
    RadialCalculus c = radial_calculus(b, r, n);
    double t1 = (c.grad_sq / c.f) * (c.grad_sq / c.f);  // phi^{-2g}|grad phi^g|^4
    double t2 = std::abs(c.f * c.bilap);
    double t3 = c.hess_sq;
    return std::sqrt(t1 + t2 + t3);
}

}  // namespace bistab
