// fokker_planck.hpp — 1-D Fokker-Planck evolution and stationary densities
//
//   dP/dt = -d/dx [ a(x) P - d/dx (D(x) P) ]     (Ito form, D inside both derivatives)

#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "thermobath/temperature_field.hpp"

namespace thermobath {

struct EffectiveParamsI;

// Uniform cell-centred grid on [lo, hi].
struct Grid {
    double lo{-0.5};
    double hi{0.5};
    Eigen::Index n{1};

    static Grid box(double length, Eigen::Index cells) { return {-0.5 * length, 0.5 * length, cells}; }

    double dx() const { return (hi - lo) / static_cast<double>(n); }
    double center(Eigen::Index j) const { return lo + (static_cast<double>(j) + 0.5) * dx(); }
    Eigen::ArrayXd centers() const;
    Eigen::ArrayXd faces() const; // n + 1 entries, walls included
    bool same_as(const Grid& other) const;
};

struct DensityProfile {
    Grid grid;
    Eigen::ArrayXd P;
    std::string model;

    double total_mass() const { return P.sum() * grid.dx(); }
    void normalize();
};

DensityProfile uniform_density(const Grid& grid);
// Cell averages of a normal density, renormalized on the box.
DensityProfile gaussian_density(const Grid& grid, double x0, double width);
// Conservative coarsening; n_coarse must divide grid.n.
DensityProfile rebin(const DensityProfile& fine, Eigen::Index n_coarse);

struct DriftDiffusion {
    std::function<double(double)> drift;     // a(x)
    std::function<double(double)> diffusion; // D(x) > 0
};

// upwind: a P with upwinded P, central difference of D P.
// exponential_fitting: Scharfetter-Gummel flux, exact for zero-flux states.
enum class FluxScheme { upwind, exponential_fitting };

// Fluxes at the n + 1 faces; the two wall entries are exactly zero.
Eigen::ArrayXd face_fluxes(const DriftDiffusion& coeffs, const DensityProfile& density,
                           FluxScheme scheme = FluxScheme::upwind);

// Explicit conservative finite-volume evolution with reflecting walls. The
// step is shortened so an integer number of steps lands on t_final. Throws
// ParameterError if dt breaks dt <= 0.4 dx^2/max D or the positivity bound.
DensityProfile evolve(const DriftDiffusion& coeffs, const DensityProfile& initial, double dt, double t_final,
                      FluxScheme scheme = FluxScheme::upwind);

// Largest stable step for evolve on this grid.
double max_stable_dt(const DriftDiffusion& coeffs, const Grid& grid, FluxScheme scheme = FluxScheme::upwind);

// P ~ (1/D) exp(int a/D), cumulative trapezoid anchored at the box midpoint.
DensityProfile steady_state_numeric(const DriftDiffusion& coeffs, const Grid& grid);

// Closed form for a free particle in a constant gradient:
// P = exp(-kappa T' x/T0) / A,  A = (2 T0/(kappa T')) sinh(kappa T' L/(2 T0)).
// Throws ModelValidityError if T'' != 0 or a potential is present.
DensityProfile steady_state_I(const EffectiveParamsI& params, const Grid& grid);

// S_T(x) = 1/T(x) at the cell centres.
Eigen::ArrayXd soret_profile(const TemperatureField& field, const Grid& grid);

} // namespace thermobath
