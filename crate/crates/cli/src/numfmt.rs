//! Decimal and rational rendering for report values.

/// `x` with 15 significant digits, fixed-point in the usual range.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    }
}

/// Nearest `p/q` with `q = 2^j` or `q = 7·2^j` (up to `2^16`) within `tol`.
///
/// The second family covers the nine-qubit floor `1/14` and its relatives.
pub fn small_rational(x: f64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() || x.abs() > 1e6 {
        return None;
    }
    let mut dens: Vec<u64> = (0..=16).map(|j| 1u64 << j).chain((0..=13).map(|j| 7u64 << j)).collect();
    dens.sort_unstable();
    dens.into_iter().find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= tol).then_some((p as i64, q))
    })
}

/// `sig15(x)`, followed by ` (p/q)` when a small rational lies within `1e-9`.
pub fn annotated(x: f64) -> String {
    match small_rational(x, 1e-9) {
        Some((p, 1)) => format!("{} ({p})", sig15(x)),
        Some((p, q)) => format!("{} ({p}/{q})", sig15(x)),
        None => sig15(x),
    }
}

/// Short scientific form for residuals and deviations.
pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}
