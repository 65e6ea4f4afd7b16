use std::fmt;
use std::str::FromStr;

/// Neutrino flavor, also used as a row index into the mixing matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    E,
    Mu,
    Tau,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::E, Flavor::Mu, Flavor::Tau];

    pub fn index(self) -> usize {
        match self {
            Flavor::E => 0,
            Flavor::Mu => 1,
            Flavor::Tau => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Flavor> {
        Flavor::ALL.get(i).copied()
    }

    /// The other two flavors, in (e, μ, τ) order.
    pub fn complement(self) -> (Flavor, Flavor) {
        match self {
            Flavor::E => (Flavor::Mu, Flavor::Tau),
            Flavor::Mu => (Flavor::E, Flavor::Tau),
            Flavor::Tau => (Flavor::E, Flavor::Mu),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::E => "e",
            Flavor::Mu => "mu",
            Flavor::Tau => "tau",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "e" | "nu_e" => Ok(Flavor::E),
            "mu" | "nu_mu" => Ok(Flavor::Mu),
            "tau" | "nu_tau" => Ok(Flavor::Tau),
            other => Err(format!("unknown flavor `{other}` (expected e, mu or tau)")),
        }
    }
}
