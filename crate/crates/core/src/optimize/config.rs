use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[serde(rename = "nm")]
    NelderMead,
    #[serde(rename = "ea")]
    OnePlusOneEa,
    Pso,
    CmaEs,
    De,
    Sade,
    #[serde(rename = "hybrid")]
    HybridDeNm,
}

impl Algorithm {
    /// The six stand-alone optimisers.
    pub const CAMPAIGN: [Algorithm; 6] = [
        Algorithm::NelderMead,
        Algorithm::OnePlusOneEa,
        Algorithm::Pso,
        Algorithm::CmaEs,
        Algorithm::De,
        Algorithm::Sade,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::NelderMead => "nm",
            Algorithm::OnePlusOneEa => "ea",
            Algorithm::Pso => "pso",
            Algorithm::CmaEs => "cmaes",
            Algorithm::De => "de",
            Algorithm::Sade => "sade",
            Algorithm::HybridDeNm => "hybrid",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = WecError;

    fn from_str(s: &str) -> Result<Self> {
        let tag = s.to_ascii_lowercase().replace(['-', '_', '+'], "");
        Ok(match tag.as_str() {
            "nm" | "neldermead" => Algorithm::NelderMead,
            "ea" | "11ea" | "oneplusoneea" => Algorithm::OnePlusOneEa,
            "pso" => Algorithm::Pso,
            "cmaes" => Algorithm::CmaEs,
            "de" => Algorithm::De,
            "sade" => Algorithm::Sade,
            "hybrid" | "denm" | "hybriddenm" => Algorithm::HybridDeNm,
            _ => return Err(WecError::Config(format!("unknown algorithm `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NelderMeadParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for NelderMeadParams {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EaParams {
    /// Mutation standard deviation as a fraction of each bound range.
    pub sigma_fraction: f64,
}

impl Default for EaParams {
    fn default() -> Self {
        Self { sigma_fraction: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub particles: usize,
    pub cognitive: f64,
    pub social: f64,
    pub inertia: f64,
    /// Factor applied to the inertia weight after every iteration.
    pub inertia_damping: f64,
    /// Velocity limit as a fraction of each bound range.
    pub max_velocity_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            particles: 25,
            cognitive: 1.5,
            social: 2.0,
            inertia: 1.0,
            inertia_damping: 0.99,
            max_velocity_fraction: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CmaEsParams {
    pub population: usize,
    /// Initial step size as a fraction of each bound range.
    pub sigma_fraction: f64,
    /// Resampling attempts for an out-of-bounds candidate before clamping.
    pub max_resamples: usize,
}

impl Default for CmaEsParams {
    fn default() -> Self {
        Self {
            population: 16,
            sigma_fraction: 0.3,
            max_resamples: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeParams {
    pub population: usize,
    pub weight: f64,
    pub crossover: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            population: 25,
            weight: 0.5,
            crossover: 0.8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SadeParams {
    pub population: usize,
    /// Generations of success/failure memory.
    pub learning_period: usize,
    /// Floor on every strategy probability.
    pub min_probability: f64,
    pub weight_mean: f64,
    pub weight_std: f64,
    pub crossover_std: f64,
}

impl Default for SadeParams {
    fn default() -> Self {
        Self {
            population: 25,
            learning_period: 50,
            min_probability: 0.01,
            weight_mean: 0.5,
            weight_std: 0.3,
            crossover_std: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridParams {
    /// DE evaluations per round on the PTO block.
    pub de_budget: usize,
    /// NM evaluations per round on the tether angles.
    pub nm_budget: usize,
}

impl Default for HybridParams {
    fn default() -> Self {
        Self {
            de_budget: 800,
            nm_budget: 200,
        }
    }
}

/// One optimiser with its hyperparameters, budget and seeding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimiserConfig {
    pub algorithm: Algorithm,
    /// Maximum objective evaluations per run.
    pub budget: usize,
    pub repeats: usize,
    /// Run `r` uses seed `seed + r`.
    pub seed: u64,
    pub nm: NelderMeadParams,
    pub ea: EaParams,
    pub pso: PsoParams,
    pub cmaes: CmaEsParams,
    pub de: DeParams,
    pub sade: SadeParams,
    pub hybrid: HybridParams,
}

impl Default for OptimiserConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::De,
            budget: 5000,
            repeats: 10,
            seed: 0,
            nm: NelderMeadParams::default(),
            ea: EaParams::default(),
            pso: PsoParams::default(),
            cmaes: CmaEsParams::default(),
            de: DeParams::default(),
            sade: SadeParams::default(),
            hybrid: HybridParams::default(),
        }
    }
}

impl OptimiserConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(WecError::Config(m));
        if self.budget == 0 {
            return fail("budget must be positive".into());
        }
        if self.repeats == 0 {
            return fail("repeats must be positive".into());
        }
        let nm = &self.nm;
        if !(nm.reflection > 0.0 && nm.expansion > 1.0 && nm.contraction > 0.0 && nm.contraction < 1.0)
            || !(nm.shrink > 0.0 && nm.shrink < 1.0)
        {
            return fail(format!("invalid Nelder-Mead coefficients {nm:?}"));
        }
        if !(self.ea.sigma_fraction > 0.0) {
            return fail("EA sigma fraction must be positive".into());
        }
        let p = &self.pso;
        if p.particles < 2
            || !(p.cognitive >= 0.0 && p.social >= 0.0 && p.inertia >= 0.0)
            || !(p.inertia_damping > 0.0 && p.inertia_damping <= 1.0)
            || !(p.max_velocity_fraction > 0.0)
        {
            return fail(format!("invalid PSO parameters {p:?}"));
        }
        let c = &self.cmaes;
        if c.population < 2 || !(c.sigma_fraction > 0.0) {
            return fail(format!("invalid CMA-ES parameters {c:?}"));
        }
        let d = &self.de;
        if d.population < 4 {
            return fail(format!("DE population {} < 4", d.population));
        }
        if !(d.weight > 0.0 && d.weight <= 2.0 && (0.0..=1.0).contains(&d.crossover)) {
            return fail(format!("invalid DE parameters {d:?}"));
        }
        let s = &self.sade;
        if s.population < 6 {
            return fail(format!("SaDE population {} < 6", s.population));
        }
        if s.learning_period == 0
            || !(s.min_probability >= 0.0 && s.min_probability * 4.0 < 1.0)
            || !(s.weight_std >= 0.0 && s.crossover_std >= 0.0)
        {
            return fail(format!("invalid SaDE parameters {s:?}"));
        }
        if self.hybrid.de_budget + self.hybrid.nm_budget == 0 {
            return fail("hybrid needs a positive DE or NM budget per round".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for a in Algorithm::CAMPAIGN.iter().chain([&Algorithm::HybridDeNm]) {
            assert_eq!(a.tag().parse::<Algorithm>().unwrap(), *a);
        }
        assert_eq!("CMA-ES".parse::<Algorithm>().unwrap(), Algorithm::CmaEs);
        assert_eq!("1+1EA".parse::<Algorithm>().unwrap(), Algorithm::OnePlusOneEa);
        assert!("ga".parse::<Algorithm>().is_err());
    }

    #[test]
    fn defaults_valid_and_checked() {
        assert!(OptimiserConfig::default().validate().is_ok());
        let mut c = OptimiserConfig::default();
        c.de.population = 3;
        assert!(c.validate().is_err());
        let c = OptimiserConfig::default().with_budget(0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn toml_partial_override() {
        let c: OptimiserConfig =
            toml::from_str("algorithm = \"sade\"\nbudget = 100\n[pso]\nparticles = 10\n").unwrap();
        assert_eq!(c.algorithm, Algorithm::Sade);
        assert_eq!(c.pso.particles, 10);
        assert_eq!(c.pso.social, 2.0);
    }
}
