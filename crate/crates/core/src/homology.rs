//! Integer homology of finite complexes.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::enumerate::ComplexSlice;
use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, SnfResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Rank of the chain group.
    pub rank: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degrees {
            let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
            writeln!(f, "deg {}: rank {}, betti {}, torsion [{}]", d.degree, d.rank, d.betti, t.join(","))?;
        }
        Ok(())
    }
}

/// `betti_k = dim C_k - rank d_k - rank d_{k+1}`, torsion from the divisors of `d_{k+1}`,
/// for `k ≤ max_degree`.
pub fn homology(slice: &ComplexSlice) -> Result<HomologyReport> {
    let dims = slice.dims();
    let top = dims.len() - 1;
    for k in 2..=top {
        if !slice.boundaries[k - 1].mul(&slice.boundaries[k]).is_zero() {
            return Err(Error::InconsistentComplex(format!("d∘d ≠ 0 from degree {k}")));
        }
    }
    let snf: Vec<SnfResult> = (0..=top)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                SnfResult { rank: 0, divisors: Vec::new() }
            } else {
                smith_normal_form(&slice.boundaries[k])
            }
        })
        .collect();
    let degrees = (0..=slice.max_degree.min(top))
        .map(|k| {
            let out_rank = snf[k].rank;
            let in_rank = if k < top { snf[k + 1].rank } else { 0 };
            DegreeHomology {
                degree: k,
                rank: dims[k],
                betti: dims[k] - out_rank - in_rank,
                torsion: if k < top { snf[k + 1].torsion() } else { Vec::new() },
            }
        })
        .collect();
    Ok(HomologyReport { degrees })
}
