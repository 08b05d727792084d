use super::ZipLoad;

/// Real power (W) of a ZIP load at per-unit voltage `v_ratio`, scaled by the
/// schedule multiplier.
pub fn zip_power(z: &ZipLoad, v_ratio: f64, mult: f64) -> f64 {
    mult * z.base_power * (z.z_frac * v_ratio * v_ratio + z.i_frac * v_ratio + z.p_frac)
}
