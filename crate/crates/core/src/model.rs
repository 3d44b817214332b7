//! Parameter and state vocabulary shared by every module.
//!
//! Units: `ħ = k_B = 1`. Energies, mode frequencies and couplings share one
//! user-chosen energy unit; the reference figures use `gap = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative scale of the order-parameter classification tolerance.
pub const ORDER_TOLERANCE_SCALE: f64 = 1e-4;

/// Which branch of the Lambda system a mode couples to.
///
/// `One` is the `|1> <-> |3>` transition driven by mode 1, `Two` the
/// `|2> <-> |3>` transition driven by mode 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::One, Branch::Two];

    /// Zero-based axis index in the `(y1, y2)` plane.
    pub fn index(self) -> usize {
        match self {
            Branch::One => 0,
            Branch::Two => 1,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::One => Branch::Two,
            Branch::Two => Branch::One,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::One => write!(f, "1"),
            Branch::Two => write!(f, "2"),
        }
    }
}

/// The six model constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// `E2 - E1`.
    pub delta: f64,
    /// `E3 - E1`.
    pub gap: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub g1: f64,
    pub g2: f64,
}

impl ModelParams {
    pub fn new(delta: f64, gap: f64, omega1: f64, omega2: f64, g1: f64, g2: f64) -> Self {
        Self {
            delta,
            gap,
            omega1,
            omega2,
            g1,
            g2,
        }
    }

    /// Checks every invariant and reports the first one violated.
    pub fn validate(self) -> Result<Self> {
        let named = [
            ("delta", self.delta),
            ("Delta", self.gap),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("g1", self.g1),
            ("g2", self.g2),
        ];
        for (name, value) in named {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.gap <= 0.0 {
            return Err(Error::InvalidParameter("Delta must be positive".into()));
        }
        if self.omega1 <= 0.0 {
            return Err(Error::InvalidParameter("omega1 must be positive".into()));
        }
        if self.omega2 <= 0.0 {
            return Err(Error::InvalidParameter("omega2 must be positive".into()));
        }
        if self.delta < 0.0 {
            return Err(Error::InvalidParameter("delta must be non-negative".into()));
        }
        if self.g1 < 0.0 {
            return Err(Error::InvalidParameter("g1 must be non-negative".into()));
        }
        if self.g2 < 0.0 {
            return Err(Error::InvalidParameter("g2 must be non-negative".into()));
        }
        Ok(self)
    }

    pub fn omega(&self, branch: Branch) -> f64 {
        match branch {
            Branch::One => self.omega1,
            Branch::Two => self.omega2,
        }
    }

    pub fn coupling(&self, branch: Branch) -> f64 {
        match branch {
            Branch::One => self.g1,
            Branch::Two => self.g2,
        }
    }

    pub fn with_coupling(mut self, branch: Branch, g: f64) -> Self {
        match branch {
            Branch::One => self.g1 = g,
            Branch::Two => self.g2 = g,
        }
        self
    }

    /// `sqrt(gap * omega_n) / 2`, the coupling below which no nontrivial
    /// stationary point exists for `delta = 0`.
    pub fn critical_coupling(&self, branch: Branch) -> f64 {
        (self.gap * self.omega(branch)).sqrt() / 2.0
    }

    /// `g_n / g_{n,c}`.
    pub fn relative_coupling(&self, branch: Branch) -> f64 {
        self.coupling(branch) / self.critical_coupling(branch)
    }

    /// Natural length of the `y_n` axis, `sqrt(gap / omega_n)`.
    pub fn y_scale(&self, branch: Branch) -> f64 {
        (self.gap / self.omega(branch)).sqrt()
    }

    /// Threshold above which `y_n` counts as a macroscopic order parameter.
    pub fn order_tolerance(&self, branch: Branch) -> f64 {
        ORDER_TOLERANCE_SCALE * self.y_scale(branch)
    }

    /// Stationarity bound on any minimizing `y_n`: `|y_n| <= g_n / omega_n`
    /// at every temperature and detuning, since the thermal coherence is at
    /// most one half in magnitude.
    pub fn y_bound(&self, branch: Branch) -> f64 {
        self.coupling(branch) / self.omega(branch)
    }
}

/// Inverse temperature `beta = 1 / (k_B T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub beta: f64,
}

impl ThermoPoint {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParameter(
                "beta must be positive and finite".into(),
            ));
        }
        Ok(Self { beta })
    }

    /// From `k_B T` in absolute energy units.
    pub fn from_temperature(kt: f64) -> Result<Self> {
        if !kt.is_finite() || kt <= 0.0 {
            return Err(Error::InvalidParameter(
                "temperature must be positive and finite".into(),
            ));
        }
        Self::new(1.0 / kt)
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }
}

/// Scaled field quadratures: `alpha_n = sqrt(N) (y_n + i z_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MeanField {
    pub y1: f64,
    pub z1: f64,
    pub y2: f64,
    pub z2: f64,
}

impl MeanField {
    pub const ORIGIN: MeanField = MeanField {
        y1: 0.0,
        z1: 0.0,
        y2: 0.0,
        z2: 0.0,
    };

    pub fn new(y1: f64, z1: f64, y2: f64, z2: f64) -> Self {
        Self { y1, z1, y2, z2 }
    }

    /// A point in the `z = 0` plane.
    pub fn on_plane(y1: f64, y2: f64) -> Self {
        Self::new(y1, 0.0, y2, 0.0)
    }

    /// Reflects into the `y1, y2 >= 0` quadrant. `z` is left untouched.
    pub fn canonical(self) -> Self {
        Self {
            y1: self.y1.abs(),
            y2: self.y2.abs(),
            ..self
        }
    }

    pub fn y(&self, branch: Branch) -> f64 {
        match branch {
            Branch::One => self.y1,
            Branch::Two => self.y2,
        }
    }

    pub fn with_y(mut self, branch: Branch, value: f64) -> Self {
        match branch {
            Branch::One => self.y1 = value,
            Branch::Two => self.y2 = value,
        }
        self
    }

    pub fn is_finite(&self) -> bool {
        self.y1.is_finite() && self.z1.is_finite() && self.y2.is_finite() && self.z2.is_finite()
    }
}

/// Equilibrium phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhaseLabel {
    Normal,
    /// Mode 1 macroscopically occupied, `|1> <-> |3>` polarised ("red").
    Sr1,
    /// Mode 2 macroscopically occupied, `|2> <-> |3>` polarised ("blue").
    Sr2,
}

impl PhaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::Normal => "normal",
            PhaseLabel::Sr1 => "SR1",
            PhaseLabel::Sr2 => "SR2",
        }
    }

    /// Color alias used in plots.
    pub fn alias(&self) -> &'static str {
        match self {
            PhaseLabel::Normal => "normal",
            PhaseLabel::Sr1 => "red",
            PhaseLabel::Sr2 => "blue",
        }
    }

    pub fn from_branch(branch: Option<Branch>) -> Self {
        match branch {
            None => PhaseLabel::Normal,
            Some(Branch::One) => PhaseLabel::Sr1,
            Some(Branch::Two) => PhaseLabel::Sr2,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "normal" | "Normal" => Some(PhaseLabel::Normal),
            "SR1" | "sr1" | "red" => Some(PhaseLabel::Sr1),
            "SR2" | "sr2" | "blue" => Some(PhaseLabel::Sr2),
            _ => None,
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
