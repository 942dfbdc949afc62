use serde::{Deserialize, Serialize};

use super::params::EpiParams;

/// Column labels of the host-vector system, in state-vector order.
pub const SIR_ASI_LABELS: [&str; 6] = ["S_h", "I_h", "R_h", "A_m", "S_m", "I_m"];

/// Column labels of the vaccination system, in state-vector order.
pub const SVIR_LABELS: [&str; 7] = ["S_h", "V_h", "I_h", "R_h", "A_m", "S_m", "I_m"];

/// Humans (S, I, R) and mosquitoes (aquatic, susceptible, infected).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SystemState {
    #[serde(rename = "S_h")]
    pub s_h: f64,
    #[serde(rename = "I_h")]
    pub i_h: f64,
    #[serde(rename = "R_h")]
    pub r_h: f64,
    #[serde(rename = "A_m")]
    pub a_m: f64,
    #[serde(rename = "S_m")]
    pub s_m: f64,
    #[serde(rename = "I_m")]
    pub i_m: f64,
}

impl SystemState {
    pub const DIM: usize = 6;

    pub fn from_array(y: [f64; 6]) -> Self {
        SystemState {
            s_h: y[0],
            i_h: y[1],
            r_h: y[2],
            a_m: y[3],
            s_m: y[4],
            i_m: y[5],
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.s_h, self.i_h, self.r_h, self.a_m, self.s_m, self.i_m]
    }

    /// Ten infected humans in an otherwise susceptible population, larval
    /// sites at capacity, adult mosquitoes at `m` per human.
    pub fn outbreak_seed(params: &EpiParams) -> Self {
        SystemState {
            s_h: params.n_h - 10.0,
            i_h: 10.0,
            r_h: 0.0,
            a_m: params.k * params.n_h,
            s_m: params.m * params.n_h,
            i_m: 0.0,
        }
    }

    pub fn humans(&self) -> f64 {
        self.s_h + self.i_h + self.r_h
    }

    pub fn adult_mosquitoes(&self) -> f64 {
        self.s_m + self.i_m
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    pub fn is_disease_free(&self) -> bool {
        self.i_h == 0.0 && self.i_m == 0.0
    }

    /// Membership in the feasible region, allowing `slack` per bound.
    pub fn in_omega(&self, params: &EpiParams, slack: f64) -> bool {
        self.to_array().iter().all(|&v| v >= -slack)
            && self.humans() <= params.n_h + slack
            && self.a_m <= params.k * params.n_h + slack
            && self.adult_mosquitoes() <= params.m * params.n_h + slack
    }

    /// Bound violations as `(constraint, excess)` pairs.
    pub fn omega_violations(&self, params: &EpiParams, slack: f64) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (label, v) in SIR_ASI_LABELS.iter().zip(self.to_array()) {
            if v < -slack {
                out.push((format!("{label} >= 0"), -v));
            }
        }
        let checks = [
            ("S_h+I_h+R_h <= N_h", self.humans() - params.n_h),
            ("A_m <= k*N_h", self.a_m - params.k * params.n_h),
            ("S_m+I_m <= m*N_h", self.adult_mosquitoes() - params.m * params.n_h),
        ];
        for (name, excess) in checks {
            if excess > slack {
                out.push((name.to_string(), excess));
            }
        }
        out
    }

    /// The trivial equilibrium: no mosquitoes, no disease.
    pub fn mosquito_free(params: &EpiParams) -> Self {
        SystemState {
            s_h: params.n_h,
            ..Default::default()
        }
    }
}

/// Vaccination variant: the human block gains a vaccinated compartment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SvirState {
    #[serde(rename = "S_h")]
    pub s_h: f64,
    #[serde(rename = "V_h")]
    pub v_h: f64,
    #[serde(rename = "I_h")]
    pub i_h: f64,
    #[serde(rename = "R_h")]
    pub r_h: f64,
    #[serde(rename = "A_m")]
    pub a_m: f64,
    #[serde(rename = "S_m")]
    pub s_m: f64,
    #[serde(rename = "I_m")]
    pub i_m: f64,
}

impl SvirState {
    pub const DIM: usize = 7;

    pub fn from_array(y: [f64; 7]) -> Self {
        SvirState {
            s_h: y[0],
            v_h: y[1],
            i_h: y[2],
            r_h: y[3],
            a_m: y[4],
            s_m: y[5],
            i_m: y[6],
        }
    }

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.s_h, self.v_h, self.i_h, self.r_h, self.a_m, self.s_m, self.i_m,
        ]
    }

    /// Embeds a host-vector state with an empty vaccinated compartment.
    pub fn from_sir_asi(s: &SystemState) -> Self {
        SvirState {
            s_h: s.s_h,
            v_h: 0.0,
            i_h: s.i_h,
            r_h: s.r_h,
            a_m: s.a_m,
            s_m: s.s_m,
            i_m: s.i_m,
        }
    }

    /// Drops the vaccinated compartment.
    pub fn without_vaccinated(&self) -> SystemState {
        SystemState {
            s_h: self.s_h,
            i_h: self.i_h,
            r_h: self.r_h,
            a_m: self.a_m,
            s_m: self.s_m,
            i_m: self.i_m,
        }
    }

    pub fn humans(&self) -> f64 {
        self.s_h + self.v_h + self.i_h + self.r_h
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}
