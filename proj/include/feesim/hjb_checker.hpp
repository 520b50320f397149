#pragma once

#include <cstddef>
#include <vector>

#include "feesim/market_model.hpp"

namespace feesim {

// Candidate value function of the scaled log-utility problem,
// v(xi, phi) = delta xi + b ln|alpha - (1-alpha) e^phi|, with
// b = 1 - delta / (1-alpha) fixed by the boundary condition. The line
// e^phi = alpha / (1-alpha) is singular for the derivatives and is excluded
// from evaluation by `singular_margin` (in phi units).
struct CandidateValue {
    double delta = 0.0;
    double alpha = 0.0;
    double b = 1.0;
    double singular_margin = 1e-3;

    static CandidateValue make(double delta, double alpha,
                               double singular_margin = 1e-3);
    // ln(alpha / (1-alpha)); -inf when alpha == 0 (no singular line).
    double singular_phi() const;
};

struct CandidateDerivatives {
    double v = 0.0;
    double v_xi = 0.0;
    double v_phi = 0.0;
    double v_xixi = 0.0;
    double v_phiphi = 0.0;
    double v_xiphi = 0.0;
};

// Hand-coded analytic derivatives of the candidate. v is linear in xi, so
// v_xixi and v_xiphi vanish identically. DomainError inside the singular
// margin.
CandidateDerivatives candidate_derivatives(double xi, double phi, double delta,
                                           double alpha,
                                           double singular_margin = 1e-3);

struct PolicyPair {
    double pi_x = 0.0;
    double pi_f = 0.0;
};

// First-order-condition policies from the candidate's derivatives, via the
// full rho-dependent quotient formulas (Cramer's rule on the 2x2 system).
// At delta == 0 and b == 0 one direction of the system degenerates (any
// proportion is optimal there) and the quotient is 0/0; since v is linear
// in (delta, b), the removable factor is cancelled and the continuity limit
// returned, which keeps the policies defined for every delta. A vanishing
// denominator for any other reason raises NumericalError naming the node.
PolicyPair foc_policies(double xi, double phi, double delta, double alpha,
                        const MarketParams& market, double singular_margin = 1e-3);

// beta(delta) = (delta/2) nu_x^2 + (1 - delta/(1-alpha)) nu_f^2 / 2. Affine
// in delta; its endpoints delta = 0 and delta = 1-alpha reproduce the two
// welfare branches of the log manager.
double beta_of_delta(double delta, double alpha, const MarketParams& market);

struct HjbGridSpec {
    double xi_min = -5.0;
    double xi_max = 0.0;
    std::size_t n_xi = 50;
    double phi_min = -4.0;
    double phi_max = 4.0;
    std::size_t n_phi = 50;
    double singular_margin = 1e-3;
};

// Plug-in verification report. residuals is row-major over
// (xi node, phi node) after singular-margin exclusion; the boundary
// residual is evaluated at xi = 0 for each phi node. The stored maxima are
// the grid maxima of the stored values.
struct HjbResidualReport {
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    HjbGridSpec grid;
    std::vector<double> xi_nodes;
    std::vector<double> phi_nodes;
    std::vector<double> residuals;           // n_xi x n_phi, row-major
    std::vector<double> boundary_residuals;  // per phi node
    double max_abs_residual = 0.0;
    double max_abs_boundary_residual = 0.0;
};

// Evaluates the candidate and its FOC policies on the grid, plugs them into
// the HJB right-hand side and subtracts beta(delta); the candidate solves
// the equation exactly, so residuals are pure round-off. The boundary
// identity (1-alpha) - v_xi + v_phi (alpha e^{-phi} - (1-alpha)) cancels
// algebraically for every phi and delta.
HjbResidualReport hjb_residual_grid(double delta, double alpha,
                                    const MarketParams& market,
                                    const HjbGridSpec& grid = {});

}  // namespace feesim
