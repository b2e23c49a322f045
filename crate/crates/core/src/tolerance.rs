/// Thresholds shared by the checks. `Default` gives the values used
/// throughout; the CLI can override `absolute`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub absolute: f64,
    pub unit_norm: f64,
    pub tangency: f64,
    pub ball_slack: f64,
    pub eigen_gap: f64,
    pub denominator: f64,
    pub immersion: f64,
    pub totally_real: f64,
    pub nyquist: f64,
    pub period: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            absolute: 1e-9,
            unit_norm: 1e-12,
            tangency: 1e-10,
            ball_slack: 1e-9,
            eigen_gap: 1e-12,
            denominator: 1e-10,
            immersion: 1e-6,
            totally_real: 1e-6,
            nyquist: 1e-10,
            period: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn with_absolute(mut self, abs: f64) -> Self {
        self.absolute = abs;
        self
    }
}
