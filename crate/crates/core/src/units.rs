//! Boundary conversions between laboratory units and natural units.
//!
//! Internally energies are in eV and lengths/times in eV⁻¹ (ħ = c = 1).

/// ħc in eV·m.
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;

pub const EV_PER_GEV: f64 = 1e9;

pub fn gev_to_ev(gev: f64) -> f64 {
    gev * EV_PER_GEV
}

pub fn meters_to_natural(m: f64) -> f64 {
    m / HBAR_C_EV_M
}

pub fn natural_to_meters(inv_ev: f64) -> f64 {
    inv_ev * HBAR_C_EV_M
}

pub fn km_to_natural(km: f64) -> f64 {
    meters_to_natural(km * 1e3)
}

pub fn natural_to_km(inv_ev: f64) -> f64 {
    natural_to_meters(inv_ev) * 1e-3
}

/// Length unit tags accepted at the configuration boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthUnit {
    Meter,
    Kilometer,
    /// Natural units, eV⁻¹.
    InverseEv,
}

impl LengthUnit {
    pub fn to_natural(self, value: f64) -> f64 {
        match self {
            LengthUnit::Meter => meters_to_natural(value),
            LengthUnit::Kilometer => km_to_natural(value),
            LengthUnit::InverseEv => value,
        }
    }

    /// Recognizes `m`, `km` and `ev^-1` (also `1/ev`, `inv_ev`), case-insensitive.
    pub fn parse(tag: &str) -> Option<Self> {
        match tag.trim().to_ascii_lowercase().as_str() {
            "m" => Some(LengthUnit::Meter),
            "km" => Some(LengthUnit::Kilometer),
            "ev^-1" | "ev-1" | "1/ev" | "inv_ev" | "/ev" => Some(LengthUnit::InverseEv),
            _ => None,
        }
    }
}

/// Splits a quantity such as `5e-17m` or `2 km` into value and unit.
pub fn parse_length(text: &str) -> Option<(f64, LengthUnit)> {
    let text = text.trim();
    // the number ends at the first character that cannot continue a float literal
    let bytes = text.as_bytes();
    let mut end = 0;
    while end < bytes.len() {
        let c = bytes[end] as char;
        let exp_sign =
            (c == '+' || c == '-') && end > 0 && matches!(bytes[end - 1] as char, 'e' | 'E');
        let exp = (c == 'e' || c == 'E')
            && end + 1 < bytes.len()
            && (bytes[end + 1].is_ascii_digit() || matches!(bytes[end + 1] as char, '+' | '-'));
        if c.is_ascii_digit() || c == '.' || (end == 0 && (c == '-' || c == '+')) || exp_sign || exp
        {
            end += 1;
        } else {
            break;
        }
    }
    let value: f64 = text[..end].parse().ok()?;
    let unit = LengthUnit::parse(&text[end..])?;
    Some((value, unit))
}
