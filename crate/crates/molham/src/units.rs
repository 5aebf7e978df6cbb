/// Wavenumbers per hartree.
pub const CM_PER_HARTREE: f64 = 219_474.631_363_2;
/// Electron masses per dalton.
pub const ME_PER_DA: f64 = 1_822.888_486_209;

pub fn cm_to_hartree(x: f64) -> f64 {
    x / CM_PER_HARTREE
}

pub fn hartree_to_cm(x: f64) -> f64 {
    x * CM_PER_HARTREE
}

pub fn da_to_me(m: f64) -> f64 {
    m * ME_PER_DA
}
