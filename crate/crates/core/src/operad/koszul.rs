//! Koszulness of `Ass` and `MAss` through their cobar complexes.

use serde::{Deserialize, Serialize};

use crate::complex::{build_cobar_complex, CobarOperad};

use super::OperadError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub n: usize,
    pub ass_dims: Vec<usize>,
    pub mass_dims: Vec<usize>,
    pub ass_betti: Vec<usize>,
    pub mass_betti: Vec<usize>,
    /// `dim C(MAss)(n)_s = 2^n dim C(Ass)(n)_s` in every degree.
    pub split: bool,
    /// Both complexes are exact below the top degree.
    pub concentrated: bool,
    /// Top homology has dimension `n!` and `2^n n!`.
    pub top_dimensions: bool,
    pub passed: bool,
}

pub fn koszul_check(n: usize) -> Result<KoszulReport, OperadError> {
    if n < 2 {
        return Err(OperadError::Unsupported(format!("cobar complexes need n >= 2, got {n}")));
    }
    let ass = build_cobar_complex(n, CobarOperad::Ass)?;
    let mass = build_cobar_complex(n, CobarOperad::MAss)?;
    let ass_betti = ass.betti_numbers().map_err(crate::complex::ComplexError::from)?;
    let mass_betti = mass.betti_numbers().map_err(crate::complex::ComplexError::from)?;
    let (ass_dims, mass_dims) = (ass.dims(), mass.dims());
    let split = ass_dims.len() == mass_dims.len() && ass_dims.iter().zip(&mass_dims).all(|(a, m)| m == &(a << n));
    let exact_below_top = |b: &[usize]| b.iter().rev().skip(1).all(|&x| x == 0);
    let concentrated = exact_below_top(&ass_betti) && exact_below_top(&mass_betti);
    let fact: usize = (1..=n).product();
    let top_dimensions = ass_betti.last() == Some(&fact) && mass_betti.last() == Some(&(fact << n));
    Ok(KoszulReport {
        n,
        ass_dims,
        mass_dims,
        ass_betti,
        mass_betti,
        split,
        concentrated,
        top_dimensions,
        passed: split && concentrated && top_dimensions,
    })
}
