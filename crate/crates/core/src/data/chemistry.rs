use serde::Serialize;

use super::{DataError, Result};

const MOLAR_MASS_C: f64 = 12.011;
const MOLAR_MASS_H: f64 = 1.008;
const MOLAR_MASS_O: f64 = 15.999;

/// Atomic H/C and O/C ratios (van Krevelen coordinates).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AtomicRatios {
    pub h_over_c: f64,
    pub o_over_c: f64,
}

pub fn van_krevelen(c_wt: f64, h_wt: f64, o_wt: f64) -> Result<AtomicRatios> {
    if c_wt <= 0.0 || !c_wt.is_finite() {
        return Err(DataError::ZeroCarbon);
    }
    let c_mol = c_wt / MOLAR_MASS_C;
    Ok(AtomicRatios {
        h_over_c: (h_wt / MOLAR_MASS_H) / c_mol,
        o_over_c: (o_wt / MOLAR_MASS_O) / c_mol,
    })
}
