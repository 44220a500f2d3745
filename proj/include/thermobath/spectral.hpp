// spectral.hpp — Spectral densities, the memory kernel, and bath discretization
//
// J(omega) = eta_s omega^s exp(-omega/omega_c); "ohmic" is s = 1.
// K(tau)   = (2/pi) int_0^inf J(omega)/omega cos(omega tau) d omega.

#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "thermobath/quadrature.hpp"

namespace thermobath {

enum class SpectralFamily { ohmic, power_law };

std::string to_string(SpectralFamily family);

struct SpectralModel {
    SpectralFamily family{SpectralFamily::ohmic};
    double eta{1.0};      // coupling strength (friction for s = 1)
    double exponent{1.0}; // s
    double cutoff{10.0};  // omega_c = 1/tau_R

    static SpectralModel ohmic(double eta, double cutoff) {
        return {SpectralFamily::ohmic, eta, 1.0, cutoff};
    }
    static SpectralModel power_law(double eta_s, double exponent, double cutoff) {
        return {SpectralFamily::power_law, eta_s, exponent, cutoff};
    }

    double correlation_time() const { return 1.0 / cutoff; }
    void validate() const;
};

double spectral_density(const SpectralModel& model, double omega);

// K(tau), even in tau. Closed form for the ohmic family; adaptive quadrature
// otherwise.
double kernel(const SpectralModel& model, double tau);

// Direct quadrature of the defining cosine transform over [0, 50 omega_c],
// split at the zeros of cos(omega tau).
QuadratureResult kernel_by_quadrature(const SpectralModel& model, double tau,
                                      const QuadratureOptions& opts = {1e-10, 1e-12, 20000});

// A finite oscillator set {omega_k, c_k, m_k} standing in for J(omega).
struct DiscreteBathSpec {
    Eigen::ArrayXd omega;
    Eigen::ArrayXd coupling;
    Eigen::ArrayXd mass;
    double spacing{0.0}; // delta omega

    Eigen::Index count() const { return omega.size(); }
    double max_frequency() const { return omega.maxCoeff(); }
    // Measurements must end before the discrete bath rephases.
    double recurrence_time() const;
    void validate() const;
};

// Default upper frequency: 50 omega_c, where the cutoff tail is < e^-50.
inline double default_omega_max(const SpectralModel& model) { return 50.0 * model.cutoff; }

// Uniform midpoint grid omega_k = (k - 1/2) d omega, m_k = 1,
// c_k = sqrt((2/pi) m_k omega_k J(omega_k) d omega).
DiscreteBathSpec discretize(const SpectralModel& model, std::size_t n, double omega_max);

// sum_k c_k^2/(m_k omega_k^2): the discrete K(0) and the counter-term stiffness.
double counterterm_stiffness(const DiscreteBathSpec& spec);

// sum_k c_k^2/(m_k omega_k^2) cos(omega_k tau)
double reconstructed_kernel(const DiscreteBathSpec& spec, double tau);

// kappa = sum_k c_k^2/(m_k omega_k^2) * alpha_tilde
double kappa_from_bath(const DiscreteBathSpec& spec, double alpha_tilde);

// Inverse of kappa_from_bath on a given oscillator set.
double alpha_tilde_for_kappa(const DiscreteBathSpec& spec, double kappa);

// Continuum version: alpha_tilde = kappa / K(0).
double alpha_tilde_for_kappa(const SpectralModel& model, double kappa);

} // namespace thermobath
