use serde::{Deserialize, Serialize};

/// Biological and demographic constants of the host-vector model.
///
/// Rates are per day. `m` and `k` are densities per human; `m` only seeds the
/// adult mosquito population and bounds the feasible region, it does not
/// enter the vector field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EpiParams {
    /// Human population size.
    #[serde(rename = "N_h")]
    pub n_h: f64,
    /// Average daily biting rate.
    #[serde(rename = "B")]
    pub biting_rate: f64,
    /// Transmission probability mosquito to human, per bite.
    pub beta_mh: f64,
    /// Transmission probability human to mosquito, per bite.
    pub beta_hm: f64,
    /// Human mortality (inverse lifespan).
    pub mu_h: f64,
    /// Human recovery rate (inverse viremic period).
    pub eta_h: f64,
    /// Adult mosquito mortality.
    pub mu_m: f64,
    /// Eggs per deposit per capita.
    pub phi: f64,
    /// Larval mortality.
    #[serde(rename = "mu_A")]
    pub mu_a: f64,
    /// Maturation rate larva to adult.
    #[serde(rename = "eta_A")]
    pub eta_a: f64,
    /// Female mosquitoes per human.
    pub m: f64,
    /// Larvae per human.
    pub k: f64,
}

impl EpiParams {
    /// Cape Verde 2009 outbreak parameterization.
    pub fn cape_verde() -> Self {
        EpiParams {
            n_h: 480_000.0,
            biting_rate: 0.8,
            beta_mh: 0.375,
            beta_hm: 0.375,
            mu_h: 1.0 / (71.0 * 365.0),
            eta_h: 1.0 / 3.0,
            mu_m: 1.0 / 10.0,
            phi: 6.0,
            mu_a: 1.0 / 4.0,
            eta_a: 0.08,
            m: 3.0,
            k: 3.0,
        }
    }

    /// Larval carrying capacity under the given mechanical control.
    pub fn carrying_capacity(&self, controls: &ControlPolicy) -> f64 {
        controls.alpha * self.k * self.n_h
    }

    /// Per-capita force of infection on humans per infected mosquito, `B*beta_mh/N_h`.
    pub(crate) fn human_infection_coeff(&self) -> f64 {
        self.biting_rate * self.beta_mh / self.n_h
    }

    /// Per-capita force of infection on mosquitoes per infected human, `B*beta_hm/N_h`.
    pub(crate) fn vector_infection_coeff(&self) -> f64 {
        self.biting_rate * self.beta_hm / self.n_h
    }

    pub(crate) fn fields(&self) -> [(&'static str, f64); 12] {
        [
            ("N_h", self.n_h),
            ("B", self.biting_rate),
            ("beta_mh", self.beta_mh),
            ("beta_hm", self.beta_hm),
            ("mu_h", self.mu_h),
            ("eta_h", self.eta_h),
            ("mu_m", self.mu_m),
            ("phi", self.phi),
            ("mu_A", self.mu_a),
            ("eta_A", self.eta_a),
            ("m", self.m),
            ("k", self.k),
        ]
    }
}

impl Default for EpiParams {
    fn default() -> Self {
        Self::cape_verde()
    }
}

/// Constant-in-time vector control levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControlPolicy {
    /// Larvicide: extra larval removal rate.
    #[serde(rename = "c_A")]
    pub c_a: f64,
    /// Adulticide: extra adult mortality.
    pub c_m: f64,
    /// Mechanical control: fraction of breeding capacity left (1 = untouched).
    pub alpha: f64,
}

impl ControlPolicy {
    pub const NONE: ControlPolicy = ControlPolicy {
        c_a: 0.0,
        c_m: 0.0,
        alpha: 1.0,
    };

    pub fn new(c_a: f64, c_m: f64, alpha: f64) -> Self {
        ControlPolicy { c_a, c_m, alpha }
    }

    /// All three controls at the same intensity: `c_A = c_m = 1 - alpha = level`.
    pub fn combined(level: f64) -> Self {
        ControlPolicy {
            c_a: level,
            c_m: level,
            alpha: 1.0 - level,
        }
    }
}

impl Default for ControlPolicy {
    fn default() -> Self {
        Self::NONE
    }
}

/// Leaky, waning vaccine acting on the human block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VaccineParams {
    /// Fraction of newborns vaccinated.
    pub p: f64,
    /// Vaccination rate of susceptibles.
    pub psi: f64,
    /// Relative infection rate of vaccinated people (0 = perfect vaccine).
    pub sigma: f64,
    /// Waning rate of vaccine protection.
    pub w: f64,
}

impl VaccineParams {
    /// A vaccine with no effect at all.
    pub const INERT: VaccineParams = VaccineParams {
        p: 0.0,
        psi: 0.0,
        sigma: 1.0,
        w: 0.0,
    };
}

impl Default for VaccineParams {
    fn default() -> Self {
        Self::INERT
    }
}
