"""Physical constants (SI, CODATA 2018)."""

E_CHARGE = 1.602176634e-19      # elementary charge [C]
M_ELECTRON = 9.1093837015e-31   # electron mass [kg]
M_PROTON = 1.67262192369e-27    # proton mass [kg]
EPSILON_0 = 8.8541878128e-12    # vacuum permittivity [F/m]
C_LIGHT = 2.99792458e8          # speed of light [m/s]
