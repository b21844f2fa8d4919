//! Turns [`ProfileSpec`]s into solver profiles.

use std::fs;
use std::path::Path;

use fracgalerkin::galerkin::{profiles, Profile};
use fracgalerkin::{Cx, Lattice, SpectralField};

use crate::config::ProfileSpec;

/// Reads `k_1,…,k_d,re,im` rows; `#` starts a comment and a first line that
/// does not parse as numbers is treated as a header.
pub fn read_fourier(path: &Path, d: usize) -> Result<SpectralField<f64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut rows: Vec<(Vec<isize>, Cx<f64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = (|| -> Option<(Vec<isize>, Cx<f64>)> {
            if cells.len() != d + 2 {
                return None;
            }
            let k = cells[..d].iter().map(|c| c.parse().ok()).collect::<Option<Vec<isize>>>()?;
            Some((k, Cx::new(cells[d].parse().ok()?, cells[d + 1].parse().ok()?)))
        })();
        match parsed {
            Some(row) => rows.push(row),
            None if rows.is_empty() && i == 0 => continue,
            None => return Err(format!("{}:{}: expected {} comma-separated numbers", path.display(), i + 1, d + 2)),
        }
    }
    let m = rows.iter().flat_map(|(k, _)| k.iter().map(|c| c.unsigned_abs())).max().unwrap_or(0);
    let lattice = Lattice::new(d, m).map_err(|e| e.to_string())?;
    let mut field = SpectralField::zeros(&lattice);
    for (k, v) in rows {
        let idx = lattice.index_of(&k).expect("radius covers every row");
        field.coeffs_mut()[idx] += v;
    }
    Ok(field)
}

/// Builds the profile for dimension `d`; file-backed specs are read here.
pub fn build_profile(spec: &ProfileSpec, d: usize) -> Result<Profile<f64>, String> {
    Ok(match spec {
        ProfileSpec::Zero => Profile::Zero,
        ProfileSpec::Cosine => profiles::cosine(),
        ProfileSpec::DoubleWell { tilt } => profiles::double_well(*tilt),
        ProfileSpec::Mode(k) => profiles::mode(k.clone()),
        ProfileSpec::Bump { center, width } => profiles::bump(*center, *width),
        ProfileSpec::VonMises { center, kappa } => profiles::von_mises(*center, *kappa),
        ProfileSpec::Fourier(path) => Profile::coefficients(read_fourier(path, d)?),
        ProfileSpec::Oscillating { omega, inner } => {
            let omega = *omega;
            match build_profile(inner, d)? {
                Profile::Zero => Profile::Zero,
                Profile::Static(g) => Profile::time_dependent(move |t: f64, x: &[f64]| g(x) * (omega * t).cos()),
                Profile::Coefficients(c) => Profile::time_dependent(move |t: f64, x: &[f64]| {
                    c.eval(x).map_or(f64::NAN, |v| v.re) * (omega * t).cos()
                }),
                Profile::Dynamic(_) => return Err("`oscillating` cannot be nested".into()),
            }
        }
    })
}
