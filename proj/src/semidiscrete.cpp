#include "swfem/semidiscrete.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "swfem/errors.hpp"

namespace swfem {

GalerkinScheme::GalerkinScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                               std::shared_ptr<const FemSpace> sb, QuadratureRule rule)
    : cfg_(std::move(cfg)),
      rule_(std::move(rule)),
      sa_(std::move(sa)),
      sb_(std::move(sb)),
      ta_(SpaceQuadTable::build(*sa_, rule_)),
      tb_(SpaceQuadTable::build(*sb_, rule_)),
      ma_(*sa_, rule_),
      mb_(*sb_, rule_) {
    cfg_.validate();
    const int nq = ta_.n_points();
    beta_q_.resize(static_cast<std::size_t>(nq));
    beta_x_q_.resize(static_cast<std::size_t>(nq));
    for (int i = 0; i < nq; ++i) {
        beta_q_[static_cast<std::size_t>(i)] = cfg_.bathymetry->height(ta_.xq[static_cast<std::size_t>(i)]);
        beta_x_q_[static_cast<std::size_t>(i)] = cfg_.bathymetry->slope(ta_.xq[static_cast<std::size_t>(i)]);
    }
}

namespace {

// momentum forcing of the primitive system: F_u = u_t + g eta_x + u u_x
double forcing_u(const ManufacturedSolution& ms, double g, double x, double t) {
    return ms.u_t(x, t) + g * ms.eta_x(x, t) + ms.u(x, t) * ms.u_x(x, t);
}

// mass forcing: F_eta = eta_t + ((beta + eta) u)_x
double forcing_eta(const ManufacturedSolution& ms, const Bathymetry& b, double x, double t) {
    return ms.eta_t(x, t) + (b.slope(x) + ms.eta_x(x, t)) * ms.u(x, t) +
           (b.height(x) + ms.eta(x, t)) * ms.u_x(x, t);
}

class DirichletScheme final : public GalerkinScheme {
public:
    DirichletScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                    std::shared_ptr<const FemSpace> sb, QuadratureRule rule)
        : GalerkinScheme(std::move(cfg), std::move(sa), std::move(sb), std::move(rule)) {}

    void rhs(const SimState& st, SimState& out) const override {
        const int nq = ta_.n_points();
        std::vector<double> ev(nq), ex(nq), uv(nq), ux(nq), ga(nq), gb(nq);
        eval_at_quadrature(ta_, st.a, ev, ex);
        eval_at_quadrature(tb_, st.b, uv, ux);
        const bool forced = cfg_.manufactured.has_value();
        const double g = cfg_.g;
        for (int i = 0; i < nq; ++i) {
            const std::size_t q = static_cast<std::size_t>(i);
            ga[q] = -((beta_x_q_[q] + ex[q]) * uv[q] + (beta_q_[q] + ev[q]) * ux[q]);
            gb[q] = -(g * ex[q] + uv[q] * ux[q]);
            if (forced) {
                ga[q] += forcing_eta(*cfg_.manufactured, *cfg_.bathymetry, ta_.xq[q], st.t);
                gb[q] += forcing_u(*cfg_.manufactured, g, ta_.xq[q], st.t);
            }
        }
        out.a.assign(static_cast<std::size_t>(sa_->dim()), 0.0);
        out.b.assign(static_cast<std::size_t>(sb_->dim()), 0.0);
        add_load(ta_, ga, out.a);
        add_load(tb_, gb, out.b);
        ma_.solve_in_place(out.a);
        mb_.solve_in_place(out.b);
    }

    SimState initial_state() const override {
        SimState s;
        s.t = 0.0;
        s.a = l2_project(sa_, cfg_.eta_init, rule_).coef;
        s.b = l2_project(sb_, cfg_.u_init, rule_).coef;
        return s;
    }

    double eval_eta(const SimState& s, double x) const override { return sa_->eval(s.a, x); }
    double eval_u(const SimState& s, double x) const override { return sb_->eval(s.b, x); }
};

class SupercriticalScheme final : public GalerkinScheme {
public:
    SupercriticalScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                        std::shared_ptr<const FemSpace> sb, QuadratureRule rule)
        : GalerkinScheme(std::move(cfg), std::move(sa), std::move(sb), std::move(rule)) {}

    void rhs(const SimState& st, SimState& out) const override {
        const int nq = ta_.n_points();
        std::vector<double> ev(nq), ex(nq), uv(nq), ux(nq), ga(nq), gb(nq);
        eval_at_quadrature(ta_, st.a, ev, ex);
        eval_at_quadrature(tb_, st.b, uv, ux);
        const bool forced = cfg_.manufactured.has_value();
        const double g = cfg_.g, u0 = cfg_.u0, eta0 = cfg_.eta0;
        for (int i = 0; i < nq; ++i) {
            const std::size_t q = static_cast<std::size_t>(i);
            ga[q] = -(u0 * ex[q] + (beta_q_[q] + eta0) * ux[q] + (ex[q] * uv[q] + ev[q] * ux[q]) +
                      (uv[q] + u0) * beta_x_q_[q]);
            gb[q] = -(g * ex[q] + u0 * ux[q] + uv[q] * ux[q]);
            if (forced) {
                ga[q] += forcing_eta(*cfg_.manufactured, *cfg_.bathymetry, ta_.xq[q], st.t);
                gb[q] += forcing_u(*cfg_.manufactured, g, ta_.xq[q], st.t);
            }
        }
        out.a.assign(static_cast<std::size_t>(sa_->dim()), 0.0);
        out.b.assign(static_cast<std::size_t>(sb_->dim()), 0.0);
        add_load(ta_, ga, out.a);
        add_load(tb_, gb, out.b);
        ma_.solve_in_place(out.a);
        mb_.solve_in_place(out.b);
    }

    SimState initial_state() const override {
        SimState s;
        s.t = 0.0;
        const double eta0 = cfg_.eta0, u0 = cfg_.u0;
        auto e0 = cfg_.eta_init;
        auto v0 = cfg_.u_init;
        s.a = l2_project(sa_, [e0, eta0](double x) { return e0(x) - eta0; }, rule_).coef;
        s.b = l2_project(sb_, [v0, u0](double x) { return v0(x) - u0; }, rule_).coef;
        return s;
    }

    double eval_eta(const SimState& s, double x) const override {
        return cfg_.eta0 + sa_->eval(s.a, x);
    }
    double eval_u(const SimState& s, double x) const override {
        return cfg_.u0 + sb_->eval(s.b, x);
    }
};

class SubcriticalScheme final : public GalerkinScheme {
public:
    SubcriticalScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                      std::shared_ptr<const FemSpace> sb, QuadratureRule rule)
        : GalerkinScheme(std::move(cfg), std::move(sa), std::move(sb), std::move(rule)) {}

    void rhs(const SimState& st, SimState& out) const override {
        const int nq = ta_.n_points();
        std::vector<double> vv(nq), vx(nq), wv(nq), wx(nq), ga(nq), gb(nq);
        eval_at_quadrature(ta_, st.a, vv, vx);
        eval_at_quadrature(tb_, st.b, wv, wx);
        const bool forced = cfg_.manufactured.has_value();
        const double g = cfg_.g, u0 = cfg_.u0, d0 = cfg_.delta0();
        for (int i = 0; i < nq; ++i) {
            const std::size_t q = static_cast<std::size_t>(i);
            const double src = 0.5 * g * beta_x_q_[q];
            ga[q] = -((u0 + d0) * vx[q] + 1.5 * vv[q] * vx[q] + 0.5 * wv[q] * vx[q]) + src;
            gb[q] = -((u0 - d0) * wx[q] + 1.5 * wv[q] * wx[q] + 0.5 * vv[q] * wx[q]) + src;
            if (forced) {
                const auto& ms = *cfg_.manufactured;
                const double x = ta_.xq[q];
                const double H = beta_q_[q] + ms.eta(x, st.t);
                const double fh = forcing_eta(ms, *cfg_.bathymetry, x, st.t);
                const double fu = forcing_u(ms, g, x, st.t);
                const double rgh = 0.5 * std::sqrt(g / H);
                ga[q] += rgh * fh + 0.5 * fu;
                gb[q] += -rgh * fh + 0.5 * fu;
            }
        }
        out.a.assign(static_cast<std::size_t>(sa_->dim()), 0.0);
        out.b.assign(static_cast<std::size_t>(sb_->dim()), 0.0);
        add_load(ta_, ga, out.a);
        add_load(tb_, gb, out.b);
        ma_.solve_in_place(out.a);
        mb_.solve_in_place(out.b);
    }

    SimState initial_state() const override {
        SimState s;
        s.t = 0.0;
        const double g = cfg_.g, u0 = cfg_.u0, d0 = cfg_.delta0();
        auto e0 = cfg_.eta_init;
        auto uu0 = cfg_.u_init;
        auto beta = cfg_.bathymetry;
        auto v0 = [=](double x) {
            const double H = beta->height(x) + e0(x);
            return 0.5 * (uu0(x) - u0) + (std::sqrt(g * H) - d0);
        };
        auto w0 = [=](double x) {
            const double H = beta->height(x) + e0(x);
            return 0.5 * (uu0(x) - u0) - (std::sqrt(g * H) - d0);
        };
        s.a = l2_project(sa_, v0, rule_).coef;
        s.b = l2_project(sb_, w0, rule_).coef;
        return s;
    }

    double eval_eta(const SimState& s, double x) const override {
        const double half = 0.5 * (sa_->eval(s.a, x) - sb_->eval(s.b, x)) + cfg_.delta0();
        return half * half / cfg_.g - cfg_.bathymetry->height(x);
    }
    double eval_u(const SimState& s, double x) const override {
        return sa_->eval(s.a, x) + sb_->eval(s.b, x) + cfg_.u0;
    }
};

class BalanceLawScheme final : public GalerkinScheme {
public:
    BalanceLawScheme(ProblemConfig cfg, std::shared_ptr<const FemSpace> sa,
                     std::shared_ptr<const FemSpace> sb, QuadratureRule rule,
                     const SchemeOptions& opts)
        : GalerkinScheme(std::move(cfg), std::move(sa), std::move(sb), std::move(rule)),
          source_mode_(opts.source_mode),
          init_mode_(opts.init_mode) {
        // source slope at quadrature points: analytic beta', or the exact
        // spline derivative of a discrete beta_h
        const int nq = ta_.n_points();
        src_slope_q_.resize(static_cast<std::size_t>(nq));
        if (source_mode_ == SourceMode::AnalyticBeta) {
            src_slope_q_ = beta_x_q_;
        } else {
            auto beta = cfg_.bathymetry;
            auto bfun = [beta](double x) { return beta->height(x); };
            const CoefVec bh = source_mode_ == SourceMode::ProjectedBeta
                                   ? l2_project(sa_, bfun, rule_)
                                   : interpolate(sa_, bfun);
            std::vector<double> val(nq);
            eval_at_quadrature(ta_, bh.coef, val, src_slope_q_);
        }
    }

    void rhs(const SimState& st, SimState& out) const override {
        const int nq = ta_.n_points();
        std::vector<double> dv(nq), qv(nq), flux(nq), src(nq);
        eval_at_quadrature(ta_, st.a, dv, {});
        eval_at_quadrature(tb_, st.b, qv, {});
        const bool forced = cfg_.manufactured.has_value();
        const double g = cfg_.g;
        for (int i = 0; i < nq; ++i) {
            const std::size_t q = static_cast<std::size_t>(i);
            if (!(dv[q] > cfg_.depth_floor))
                throw DryStateError("water depth at quadrature point below floor", ta_.xq[q], st.t);
            flux[q] = qv[q] * qv[q] / dv[q] + 0.5 * g * dv[q] * dv[q];
            src[q] = g * src_slope_q_[q] * dv[q];
        }
        out.a.assign(static_cast<std::size_t>(sa_->dim()), 0.0);
        out.b.assign(static_cast<std::size_t>(sb_->dim()), 0.0);
        // conservation form: flux terms integrated against phi' (periodic, no
        // boundary terms), source and forcing against phi
        add_load_dphi(ta_, qv, out.a);
        add_load_dphi(tb_, flux, out.b);
        add_load(tb_, src, out.b);
        if (forced) {
            const auto& ms = *cfg_.manufactured;
            std::vector<double> fd(nq), fq(nq);
            for (int i = 0; i < nq; ++i) {
                const std::size_t q = static_cast<std::size_t>(i);
                const double x = ta_.xq[q];
                const double feta = forcing_eta(ms, *cfg_.bathymetry, x, st.t);
                const double fu = forcing_u(ms, g, x, st.t);
                const double d = beta_q_[q] + ms.eta(x, st.t);
                fd[q] = feta;
                fq[q] = ms.u(x, st.t) * feta + d * fu;
            }
            add_load(ta_, fd, out.a);
            add_load(tb_, fq, out.b);
        }
        ma_.solve_in_place(out.a);
        mb_.solve_in_place(out.b);
    }

    SimState initial_state() const override {
        SimState s;
        s.t = 0.0;
        auto beta = cfg_.bathymetry;
        auto e0 = cfg_.eta_init;
        auto uu0 = cfg_.u_init;
        auto d0 = [beta, e0](double x) { return beta->height(x) + e0(x); };
        auto q0 = [d0, uu0](double x) { return d0(x) * uu0(x); };
        if (init_mode_ == SourceMode::InterpolatedBeta) {
            s.a = interpolate(sa_, d0).coef;
            s.b = interpolate(sb_, q0).coef;
        } else {
            s.a = l2_project(sa_, d0, rule_).coef;
            s.b = l2_project(sb_, q0, rule_).coef;
        }
        return s;
    }

    double eval_eta(const SimState& s, double x) const override {
        return sa_->eval(s.a, x) - cfg_.bathymetry->height(x);
    }
    double eval_u(const SimState& s, double x) const override {
        const double d = sa_->eval(s.a, x);
        if (!(d > cfg_.depth_floor))
            throw DryStateError("water depth below floor in recovery", x, s.t);
        return sb_->eval(s.b, x) / d;
    }

private:
    SourceMode source_mode_, init_mode_;
    std::vector<double> src_slope_q_;
};

} // namespace

std::unique_ptr<GalerkinScheme> make_scheme(const ProblemConfig& cfg, const Mesh& mesh, int order,
                                            int continuity, const QuadratureRule& rule,
                                            const SchemeOptions& opts) {
    switch (cfg.formulation) {
        case Formulation::DirichletVelocity:
            return std::make_unique<DirichletScheme>(
                cfg, make_space(mesh, order, continuity, Constraint::Free),
                make_space(mesh, order, continuity, Constraint::ZeroBoth), rule);
        case Formulation::SupercriticalChar: {
            auto s = make_space(mesh, order, continuity, Constraint::ZeroLeft);
            return std::make_unique<SupercriticalScheme>(cfg, s, s, rule);
        }
        case Formulation::SubcriticalChar:
            return std::make_unique<SubcriticalScheme>(
                cfg, make_space(mesh, order, continuity, Constraint::ZeroLeft),
                make_space(mesh, order, continuity, Constraint::ZeroRight), rule);
        case Formulation::PeriodicBalanceLaw: {
            auto s = make_space(mesh, order, continuity, Constraint::Periodic);
            return std::make_unique<BalanceLawScheme>(cfg, s, s, rule, opts);
        }
    }
    throw std::invalid_argument("unknown formulation");
}

double PhysicalRecovery::H(double x) const {
    const double half = 0.5 * (v(x) - w(x)) + delta0;
    return half * half / g;
}

double PhysicalRecovery::u(double x) const { return v(x) + w(x) + u0; }

double PhysicalRecovery::eta(double x) const { return H(x) - bathymetry->height(x); }

CoefVec PhysicalRecovery::u_coefvec() const {
    const FemSpace& sv = *v.space;
    auto free_space = make_space(sv.mesh(), sv.order(), sv.continuity(), Constraint::Free);
    const int n = free_space->dim();
    std::vector<double> c(static_cast<std::size_t>(n), u0);  // constants have all-ones coefficients
    for (int gidx = 0; gidx < n; ++gidx) {
        if (gidx >= 1) c[static_cast<std::size_t>(gidx)] += v.coef[static_cast<std::size_t>(gidx - 1)];
        if (gidx <= n - 2) c[static_cast<std::size_t>(gidx)] += w.coef[static_cast<std::size_t>(gidx)];
    }
    return CoefVec{free_space, std::move(c)};
}

PhysicalRecovery recover_physical(const CoefVec& v, const CoefVec& w, const ProblemConfig& cfg) {
    return PhysicalRecovery{v, w, cfg.u0, cfg.delta0(), cfg.g, cfg.bathymetry};
}

double integral(const CoefVec& f, const QuadratureRule& rule) {
    const SpaceQuadTable t = SpaceQuadTable::build(*f.space, rule);
    std::vector<double> v(static_cast<std::size_t>(t.n_points()));
    eval_at_quadrature(t, f.coef, v, {});
    double acc = 0.0;
    for (int i = 0; i < t.n_points(); ++i)
        acc += t.wq[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    return acc;
}

} // namespace swfem
