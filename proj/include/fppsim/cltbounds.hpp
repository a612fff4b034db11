#pragma once

#include <span>
#include <vector>

namespace fpp {

/// Differential entropy of Exp(lambda): 1 - log(lambda).
double entropy_exponential(double lambda);

/// Differential entropy of the standard normal: (log(2*pi) + 1) / 2.
double entropy_gaussian();

/// Coefficients a_i = d_i^{-1} / sqrt(sum d_j^{-2}); sum of squares is 1.
std::vector<double> standardized_coefficients(std::span<const int> d);

struct TVBoundInput {
    std::vector<int> d;          // conditioned boundary sizes, all >= 1
    double c_poincare = 0.25;    // Poincare constant of the Exp(1) summand
};

/// Total-variation bound for the standardized sum of independent
/// exponentials with rates d_i against the standard normal:
/// sqrt( 2*S4 / (c/2 + (1-c/2)*S4) * (Ent(Z) - Ent(Exp(1))) ),  S4 = sum a_i^4.
double tv_bound(const TVBoundInput& input);

/// Closed-form admissible-trace coupling bound:
/// sqrt( (log(2*pi) - 1) * 2^15 / (a_hat^8 * n * (K+1)) ).
double coupling_bound(int n, int K, double a_hat);

/// Binned total-variation proxy against the standard normal on [-6,6] plus
/// two tail cells; a lower bound of the true TV distance by refinement.
double empirical_tv(std::span<const double> samples, int bins);

}  // namespace fpp
