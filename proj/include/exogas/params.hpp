#pragma once

#include <string>
#include <vector>

namespace exogas {

// Physical constants of the viscous radiative reactive gas model, all
// nondimensional. The defaults sit inside the b > 19/4, 0 <= beta < b+9
// regime; they are a configuration default, not data from anywhere.
struct PhysParams {
    double mu = 1.0;           // shear viscosity, > 0
    double lambda1 = 0.0;      // second viscosity, n*lambda1 + 2*mu > 0
    double lambda_heat = 1.0;  // reaction heat release
    double K_rate = 1.0;       // Arrhenius prefactor
    double A_act = 1.0;        // activation energy
    double beta = 1.0;         // reaction temperature exponent, >= 0
    double d_diff = 1.0;       // species diffusion constant
    double R_gas = 1.0;        // perfect gas constant, > 0
    double c_v = 1.0;          // specific heat, > 0
    double a_rad = 0.01;       // radiation constant
    double kappa1 = 1.0;       // conductivity, constant part
    double kappa2 = 1.0;       // conductivity, theta^b part
    double b_exp = 5.0;        // conductivity exponent
    int n_dim = 3;             // spatial dimension, >= 2

    double alpha() const { return 2.0 * mu + lambda1; }

    // true iff b > 19/4
    bool theorem_regime() const { return b_exp > 19.0 / 4.0; }
    // true iff beta is outside [0, b+9)
    bool outside_theorem_regime() const {
        return !(beta >= 0.0 && beta < b_exp + 9.0);
    }

    // Collects every violated construction invariant; empty means valid.
    std::vector<std::string> validation_errors() const;
    // Throws InvalidArgument listing all violations.
    void validate() const;
};

}  // namespace exogas
