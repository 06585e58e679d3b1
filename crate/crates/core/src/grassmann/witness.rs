use num::{BigRational, One, Signed};
use serde::Serialize;

use super::{extract_arrangement, format_rational, sample_positive_point, torus_normalize, Arithmetic, RationalMatrix};
use crate::config::Limits;
use crate::dual_graph::facet_neighbors;
use crate::error::{Error, Result};
use crate::subset::KSubset;
use crate::triangulation::SortedCollection;

/// A totally positive matrix whose normalisation against `J` has `J` as the
/// top block and `{W}` as the block right below it.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub matrix: RationalMatrix,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub attempts: u32,
    pub seed: u64,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Column `t` becomes `C_{t-1} + ε C_t`, where `C_0` is `(-1)^(k-1) C_n`.
fn blend_column(c: &RationalMatrix, t: usize, eps: &BigRational) -> Vec<BigRational> {
    let (n, k) = (c.n(), c.k());
    let (prev, sign) = if t == 1 { (n, if k % 2 == 1 { 1 } else { -1 }) } else { (t - 1, 1) };
    let sign = BigRational::from_integer(sign.into());
    c.column(prev).iter().zip(c.column(t)).map(|(a, b)| a * &sign + b * eps).collect()
}

/// Builds a point on which `W` is the second largest minor after the block
/// `J`, by squeezing together the two column pairs the detour to `W` moves.
pub fn second_largest_witness(
    j: &SortedCollection,
    w: &KSubset,
    seed: u64,
    arith: Arithmetic,
    limits: &Limits,
) -> Result<Witness> {
    j.require_maximal()?;
    j.members()[0].same_shape(w)?;
    if j.contains(w) {
        return Err(Error::DegenerateQuery(format!("{w} is a member of {j}")));
    }
    let detour = facet_neighbors(j)?
        .into_iter()
        .map(|(d, _)| d)
        .find(|d| d.replacement == *w)
        .ok_or(Error::NotAdjacent { w: *w })?;
    // I_t loses x to x-1 and y to y+1
    let x = detour.i_t.iter().find(|e| !detour.i_c.contains(*e)).expect("detour moves one element");
    let y = detour.i_t.iter().find(|e| !detour.i_d.contains(*e)).expect("detour moves one element");
    let targets = [x as usize, w.cyclic_succ(y) as usize];

    let base = sample_positive_point(j.k(), j.n(), seed)?;
    let mut diagnostics = Vec::new();
    let mut eps = BigRational::one();
    for attempt in 1..=limits.epsilon_cap_exp {
        eps /= BigRational::from_integer(2.into());
        let mut m = base.clone();
        for &t in &targets {
            m = m.with_column(t, &blend_column(&base, t, &eps));
        }
        let (_, normalized) = match torus_normalize(&m, j, arith) {
            Ok(v) => v,
            Err(e @ Error::Parameter(_)) | Err(e @ Error::PrecisionFailure(_)) => {
                diagnostics.push(format!("eps=2^-{attempt}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let arr = match extract_arrangement(&normalized) {
            Ok(a) => a,
            Err(e) => {
                diagnostics.push(format!("eps=2^-{attempt}: {e}"));
                continue;
            }
        };
        if arr.block_from_top(1) != Some(j.members()) {
            return Err(Error::Internal(format!("normalization of {j} has top block {:?}", arr.block_from_top(1))));
        }
        if arr.block_from_top(2) == Some(std::slice::from_ref(w)) {
            debug_assert!(eps.is_positive());
            return Ok(Witness { matrix: m, epsilon: eps, attempts: attempt, seed });
        }
        diagnostics.push(format!("eps=2^-{attempt}: second block {:?}", arr.block_from_top(2).unwrap_or(&[])));
    }
    let last = diagnostics.last().cloned().unwrap_or_default();
    Err(Error::WitnessSearchExhausted { attempts: limits.epsilon_cap_exp, diagnostics: last })
}
