#include "feesim/hjb_checker.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "feesim/errors.hpp"
#include "feesim/io.hpp"

namespace feesim {

namespace {

constexpr const char* kModule = "hjb_checker";

void check_params(double delta, double alpha, double singular_margin) {
    if (!std::isfinite(delta)) throw DomainError(kModule, "delta", "must be finite");
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0)
        throw DomainError(kModule, "alpha", "must lie in [0, 1)");
    if (!(singular_margin > 0.0))
        throw DomainError(kModule, "singular_margin", "must be positive");
}

std::string node_label(double xi, double phi) {
    return "(xi=" + format_full(xi) + ", phi=" + format_full(phi) + ")";
}

}  // namespace

CandidateValue CandidateValue::make(double delta, double alpha,
                                    double singular_margin) {
    check_params(delta, alpha, singular_margin);
    CandidateValue out;
    out.delta = delta;
    out.alpha = alpha;
    out.b = 1.0 - delta / (1.0 - alpha);
    out.singular_margin = singular_margin;
    return out;
}

double CandidateValue::singular_phi() const {
    return alpha == 0.0 ? -std::numeric_limits<double>::infinity()
                        : std::log(alpha / (1.0 - alpha));
}

CandidateDerivatives candidate_derivatives(double xi, double phi, double delta,
                                           double alpha, double singular_margin) {
    const CandidateValue cand = CandidateValue::make(delta, alpha, singular_margin);
    if (!std::isfinite(xi) || !std::isfinite(phi))
        throw DomainError(kModule, "phi", "grid node must be finite");
    if (std::abs(phi - cand.singular_phi()) < singular_margin)
        throw DomainError(kModule, "phi", "inside the singular margin at " +
                                              node_label(xi, phi));

    const double u = std::exp(phi);
    const double denom = alpha - (1.0 - alpha) * u;
    const double b = cand.b;

    CandidateDerivatives d;
    d.v = delta * xi + b * std::log(std::abs(denom));
    d.v_xi = delta;
    d.v_xixi = 0.0;
    d.v_xiphi = 0.0;
    d.v_phi = -(b * (1.0 - alpha) * u) / denom;
    d.v_phiphi = -(b * alpha * (1.0 - alpha) * u) / (denom * denom);
    return d;
}

PolicyPair foc_policies(double xi, double phi, double delta, double alpha,
                        const MarketParams& market, double singular_margin) {
    const CandidateDerivatives d =
        candidate_derivatives(xi, phi, delta, alpha, singular_margin);

    const double sx2 = market.sigma_x * market.sigma_x;
    const double sf2 = market.sigma_f * market.sigma_f;
    const double a11 = sx2 * (d.v_xixi - d.v_xi);
    const double a22 = sf2 * (d.v_phiphi - d.v_phi);
    const double a12 = market.rho * market.sigma_x * market.sigma_f * d.v_xiphi;
    const double rhs1 = -market.mu_x * d.v_xi;
    const double rhs2 = -market.mu_f * d.v_phi;
    const double det = a11 * a22 - a12 * a12;

    PolicyPair out;
    if (det != 0.0) {
        out.pi_x = (rhs1 * a22 - a12 * rhs2) / det;
        out.pi_f = (a11 * rhs2 - a12 * rhs1) / det;
        return out;
    }
    if (a12 != 0.0)
        throw NumericalError(kModule, "singular coupled FOC system at " +
                                          node_label(xi, phi));

    // Decoupled legs. A zero diagonal entry means that direction of the sup
    // is degenerate for this (delta, b); the quotient is restored by
    // cancelling the parameter the leg is linear in.
    if (a11 != 0.0) {
        out.pi_x = rhs1 / a11;
    } else {
        if (d.v_xi != 0.0)
            throw NumericalError(kModule, "FOC denominator vanished at " +
                                              node_label(xi, phi));
        // v_xi = delta and v_xixi = 0, so rhs1/a11 = mu_x / sigma_x^2 for
        // every nonzero delta; take that limit.
        out.pi_x = market.mu_x / sx2;
    }
    if (a22 != 0.0) {
        out.pi_f = rhs2 / a22;
    } else {
        // Per-unit-b factors of v_phi and v_phiphi.
        const double u = std::exp(phi);
        const double denom = alpha - (1.0 - alpha) * u;
        const double w1 = -((1.0 - alpha) * u) / denom;
        const double w2 = -(alpha * (1.0 - alpha) * u) / (denom * denom);
        const double curv = sf2 * (w2 - w1);
        if (curv == 0.0 || d.v_phi != 0.0)
            throw NumericalError(kModule, "FOC denominator vanished at " +
                                              node_label(xi, phi));
        out.pi_f = -market.mu_f * w1 / curv;
    }
    return out;
}

double beta_of_delta(double delta, double alpha, const MarketParams& market) {
    check_params(delta, alpha, 1.0);
    const double nu_x = sharpe(market.mu_x, market.sigma_x);
    const double nu_f = sharpe(market.mu_f, market.sigma_f);
    return 0.5 * delta * nu_x * nu_x +
           (1.0 - delta / (1.0 - alpha)) * 0.5 * nu_f * nu_f;
}

HjbResidualReport hjb_residual_grid(double delta, double alpha,
                                    const MarketParams& market,
                                    const HjbGridSpec& grid) {
    check_params(delta, alpha, grid.singular_margin);
    if (grid.n_xi < 2 || grid.n_phi < 2)
        throw DomainError(kModule, "grid", "needs at least 2 nodes per axis");
    if (!(grid.xi_min < grid.xi_max) || grid.xi_max > 0.0)
        throw DomainError(kModule, "grid", "xi range must satisfy xi_min < xi_max <= 0");

    HjbResidualReport report;
    report.delta = delta;
    report.alpha = alpha;
    report.grid = grid;
    report.beta = beta_of_delta(delta, alpha, market);

    const double singular_phi = CandidateValue::make(delta, alpha).singular_phi();
    for (std::size_t i = 0; i < grid.n_xi; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid.n_xi - 1);
        report.xi_nodes.push_back(grid.xi_min + t * (grid.xi_max - grid.xi_min));
    }
    for (std::size_t j = 0; j < grid.n_phi; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(grid.n_phi - 1);
        const double phi = grid.phi_min + t * (grid.phi_max - grid.phi_min);
        if (std::abs(phi - singular_phi) < grid.singular_margin) continue;
        report.phi_nodes.push_back(phi);
    }

    const double rho_cross = market.rho * market.sigma_x * market.sigma_f;
    report.residuals.reserve(report.xi_nodes.size() * report.phi_nodes.size());
    for (double xi : report.xi_nodes) {
        for (double phi : report.phi_nodes) {
            const CandidateDerivatives d =
                candidate_derivatives(xi, phi, delta, alpha, grid.singular_margin);
            const PolicyPair pol =
                foc_policies(xi, phi, delta, alpha, market, grid.singular_margin);
            const double vx = market.sigma_x * pol.pi_x;
            const double vf = market.sigma_f * pol.pi_f;
            const double rhs = market.mu_x * pol.pi_x * d.v_xi +
                               market.mu_f * pol.pi_f * d.v_phi +
                               0.5 * vx * vx * (d.v_xixi - d.v_xi) +
                               0.5 * vf * vf * (d.v_phiphi - d.v_phi) +
                               rho_cross * pol.pi_x * pol.pi_f * d.v_xiphi;
            report.residuals.push_back(rhs - report.beta);
        }
    }
    for (double phi : report.phi_nodes) {
        const CandidateDerivatives d =
            candidate_derivatives(0.0, phi, delta, alpha, grid.singular_margin);
        const double bc = (1.0 - alpha) - d.v_xi +
                          d.v_phi * (alpha * std::exp(-phi) - (1.0 - alpha));
        report.boundary_residuals.push_back(bc);
    }

    for (double r : report.residuals)
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
    for (double r : report.boundary_residuals)
        report.max_abs_boundary_residual =
            std::max(report.max_abs_boundary_residual, std::abs(r));
    return report;
}

}  // namespace feesim
