//! Plücker coordinates of rational matrices, torus normalisation against a
//! maximal sorted collection, and arrangements of minors.

mod bigfloat;
mod matrix;
mod witness;

use std::cell::RefCell;
use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::subset::{all_subsets, sort_merge_unchecked, sorted_pair_unchecked, KSubset, OrderedSetPartition};
use crate::triangulation::SortedCollection;

pub use bigfloat::BigFloat;
pub use matrix::{format_rational, parse_rational, sample_positive_point, vandermonde, RationalMatrix, NODE_DENOMINATOR};
pub use witness::{second_largest_witness, Witness};

/// How minor values after torus scaling are represented and compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Arithmetic {
    Exact,
    Float { bits: u32 },
}

impl Arithmetic {
    /// Exact up to `n = 8`, certified floats beyond.
    pub fn auto(n: usize, limits: &Limits) -> Self {
        if n <= 8 {
            Arithmetic::Exact
        } else {
            Arithmetic::Float { bits: limits.precision_bits }
        }
    }
}

#[derive(Clone, Debug)]
pub enum MinorValues {
    /// Each stored value is the true minor raised to the power `root`.
    Exact { root: u64, values: Vec<BigRational> },
    Approx { values: Vec<BigFloat> },
}

/// All maximal minors, indexed by the k-subsets of `[n]` in canonical order.
#[derive(Clone, Debug)]
pub struct PluckerVector {
    k: usize,
    n: usize,
    subsets: Vec<KSubset>,
    values: MinorValues,
}

impl PluckerVector {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subsets(&self) -> &[KSubset] {
        &self.subsets
    }

    pub fn values(&self) -> &MinorValues {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, MinorValues::Exact { .. })
    }

    pub fn index(&self, s: &KSubset) -> Option<usize> {
        self.subsets.binary_search(s).ok()
    }

    fn idx(&self, s: &KSubset) -> Result<usize> {
        self.index(s).ok_or_else(|| Error::Parameter(format!("{s} is not a {}-subset of [{}]", self.k, self.n)))
    }

    /// The exact minor, when stored without a root.
    pub fn exact(&self, s: &KSubset) -> Option<&BigRational> {
        match &self.values {
            MinorValues::Exact { root: 1, values } => self.index(s).map(|i| &values[i]),
            _ => None,
        }
    }

    /// A double-precision rendering of the minor.
    pub fn approx(&self, s: &KSubset) -> Result<f64> {
        let i = self.idx(s)?;
        Ok(match &self.values {
            MinorValues::Exact { root, values } => {
                let v = &values[i];
                if v.is_zero() {
                    0.0
                } else {
                    let mag = (rational_log2(&v.abs()) / *root as f64).exp2();
                    if v.is_negative() {
                        -mag
                    } else {
                        mag
                    }
                }
            }
            MinorValues::Approx { values } => values[i].to_f64(),
        })
    }

    pub fn compare(&self, a: &KSubset, b: &KSubset) -> Result<Ordering> {
        self.compare_idx(self.idx(a)?, self.idx(b)?)
    }

    fn compare_idx(&self, i: usize, j: usize) -> Result<Ordering> {
        match &self.values {
            MinorValues::Exact { values, .. } => Ok(values[i].cmp(&values[j])),
            MinorValues::Approx { values } => values[i].cmp_certified(&values[j]).ok_or_else(|| {
                Error::PrecisionFailure(format!("cannot separate {} from {}", self.subsets[i], self.subsets[j]))
            }),
        }
    }

    /// Compares `Δ_a1 Δ_a2` with `Δ_b1 Δ_b2`.
    pub fn compare_products(&self, a: [&KSubset; 2], b: [&KSubset; 2]) -> Result<Ordering> {
        let ia = [self.idx(a[0])?, self.idx(a[1])?];
        let ib = [self.idx(b[0])?, self.idx(b[1])?];
        match &self.values {
            MinorValues::Exact { values, .. } => {
                Ok((&values[ia[0]] * &values[ia[1]]).cmp(&(&values[ib[0]] * &values[ib[1]])))
            }
            MinorValues::Approx { values } => {
                let x = values[ia[0]].mul(&values[ia[1]]);
                let y = values[ib[0]].mul(&values[ib[1]]);
                x.cmp_certified(&y).ok_or_else(|| {
                    Error::PrecisionFailure(format!("cannot compare products {} {} and {} {}", a[0], a[1], b[0], b[1]))
                })
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.values {
            MinorValues::Exact { values, .. } => values.iter().all(|v| v.is_positive()),
            MinorValues::Approx { values } => {
                let zero = BigFloat::from_rational(&BigRational::zero(), 64);
                values.iter().all(|v| v.cmp_certified(&zero) == Some(Ordering::Greater))
            }
        }
    }

    /// Renders every value for output: `"p/q"`, or `"p/q^(1/L)"` for rooted
    /// exact values, plus a float rendering.
    pub fn entries(&self) -> Vec<MinorEntry> {
        self.subsets
            .iter()
            .enumerate()
            .map(|(i, s)| MinorEntry {
                subset: *s,
                exact: match &self.values {
                    MinorValues::Exact { root, values } => Some(render_rooted(&values[i], *root)),
                    MinorValues::Approx { .. } => None,
                },
                approx: self.approx(s).expect("own subset"),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorEntry {
    pub subset: KSubset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub approx: f64,
}

fn render_rooted(v: &BigRational, root: u64) -> String {
    if root == 1 {
        format_rational(v)
    } else {
        format!("({})^(1/{root})", format_rational(v))
    }
}

pub(crate) fn rational_log2(r: &BigRational) -> f64 {
    fn big_log2(x: &BigInt) -> f64 {
        let bits = x.bits() as i64;
        let keep = bits.min(60);
        let top = (x >> (bits - keep) as usize).to_f64().unwrap_or(1.0);
        top.log2() + (bits - keep) as f64
    }
    big_log2(r.numer()) - big_log2(r.denom())
}

/// Every maximal minor of `a`, exactly.
pub fn plucker_all(a: &RationalMatrix) -> PluckerVector {
    let subsets = all_subsets(a.n(), a.k());
    let values = subsets.iter().map(|s| a.minor(s).expect("shape matches")).collect();
    PluckerVector { k: a.k(), n: a.n(), subsets, values: MinorValues::Exact { root: 1, values } }
}

pub fn is_totally_positive_point(a: &RationalMatrix) -> bool {
    all_subsets(a.n(), a.k()).iter().all(|s| a.minor(s).map(|v| v.is_positive()).unwrap_or(false))
}

/// Column scaling `α_i = Π_{I in basis} Δ_I(A)^{exponents[i-1][I]}`.
#[derive(Clone, Debug)]
pub struct TorusScaling {
    pub basis: Vec<KSubset>,
    pub exponents: Vec<Vec<BigRational>>,
    pub alpha: Vec<f64>,
}

impl TorusScaling {
    /// The scaling as exact rationals, when every exponent is an integer.
    pub fn exact_alpha(&self, a: &RationalMatrix) -> Result<Option<Vec<BigRational>>> {
        if self.exponents.iter().flatten().any(|e| !e.is_integer()) {
            return Ok(None);
        }
        let deltas: Vec<BigRational> = self.basis.iter().map(|s| a.minor(s)).collect::<Result<_>>()?;
        Ok(Some(
            self.exponents
                .iter()
                .map(|row| {
                    row.iter().zip(&deltas).fold(BigRational::one(), |acc, (e, d)| {
                        acc * num::pow::Pow::pow(d, e.to_integer().to_i32().expect("small exponent"))
                    })
                })
                .collect(),
        ))
    }
}

impl Serialize for TorusScaling {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let exps: Vec<Vec<String>> = self.exponents.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        let mut st = serializer.serialize_struct("TorusScaling", 3)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("exponents", &exps)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.end()
    }
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Rescales the columns of a totally positive `a` so that every minor indexed
/// by the maximal sorted collection `s` equals 1. Returns the scaling and the
/// rescaled minors; checks that all other minors end up strictly below 1.
///
/// The scaled minor `v_J` is a product of rational powers of the original
/// minors. Exact mode stores `v_J^L` for the common denominator `L` of those
/// powers, which is an exact rational and orders the minors the same way.
pub fn torus_normalize(a: &RationalMatrix, s: &SortedCollection, arith: Arithmetic) -> Result<(TorusScaling, PluckerVector)> {
    s.require_maximal()?;
    if s.n() != a.n() || s.k() != a.k() {
        return Err(Error::Parameter(format!("collection of {}-subsets of [{}] for a {} x {} matrix", s.k(), s.n(), a.k(), a.n())));
    }
    let n = a.n();
    let raw = plucker_all(a);
    let MinorValues::Exact { values: deltas, .. } = &raw.values else { unreachable!() };
    if let Some(i) = deltas.iter().position(|v| !v.is_positive()) {
        return Err(Error::Parameter(format!("matrix is not totally positive: minor {} = {}", raw.subsets[i], deltas[i])));
    }
    let basis: Vec<KSubset> = s.members().to_vec();
    let incidence: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| (1..=n as u32).map(|i| if b.contains(i) { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let inv = matrix::inverse(&incidence).ok_or_else(|| Error::SingularIncidence(basis.clone()))?;
    let basis_idx: Vec<usize> = basis.iter().map(|b| raw.index(b).expect("member")).collect();
    let basis_log: Vec<f64> = basis_idx.iter().map(|&i| rational_log2(&deltas[i])).collect();

    let exponents: Vec<Vec<BigRational>> = inv.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    let alpha = exponents
        .iter()
        .map(|row| row.iter().zip(&basis_log).map(|(e, l)| e.to_f64().unwrap_or(0.0) * l).sum::<f64>().exp2())
        .collect();
    let scaling = TorusScaling { basis: basis.clone(), exponents, alpha };

    // c_J = e_J^T M^{-1}: the scaled minor is Δ_J Π_I Δ_I^{-c_J[I]}
    let coeffs: Vec<Vec<BigRational>> = raw
        .subsets
        .iter()
        .map(|j| {
            (0..basis.len())
                .map(|col| j.iter().map(|i| inv[i as usize - 1][col].clone()).sum::<BigRational>())
                .collect()
        })
        .collect();
    let root = lcm_of_denominators(coeffs.iter().flatten());
    let root_u64 = root.to_u64().ok_or_else(|| Error::SizeLimit(format!("exponent denominator {root} too large")))?;
    let root_r = BigRational::from_integer(root.clone());

    let int_exps = |j: usize| -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = vec![(j, root_u64 as i64)];
        for (col, c) in coeffs[j].iter().enumerate() {
            let e = -(c * &root_r).to_integer().to_i64().expect("small exponent");
            let bi = basis_idx[col];
            match out.iter_mut().find(|(b, _)| *b == bi) {
                Some(slot) => slot.1 += e,
                None => out.push((bi, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        out
    };

    let in_basis: Vec<bool> = raw.subsets.iter().map(|j| s.contains(j)).collect();
    let values = match arith {
        Arithmetic::Exact => {
            let mut vals = Vec::with_capacity(raw.subsets.len());
            for j in 0..raw.subsets.len() {
                let v = int_exps(j).into_iter().fold(BigRational::one(), |acc, (b, e)| {
                    acc * num::pow::Pow::pow(&deltas[b], e as i32)
                });
                if in_basis[j] && !v.is_one() {
                    return Err(Error::Internal(format!("normalized basis minor {} = {v}", raw.subsets[j])));
                }
                vals.push(v);
            }
            MinorValues::Exact { root: root_u64, values: vals }
        }
        Arithmetic::Float { bits } => {
            let floats: Vec<BigFloat> = deltas.iter().map(|d| BigFloat::from_rational(d, bits)).collect();
            let vals = (0..raw.subsets.len())
                .map(|j| {
                    if in_basis[j] {
                        BigFloat::one(bits)
                    } else {
                        int_exps(j).into_iter().fold(BigFloat::one(bits), |acc, (b, e)| acc.mul(&floats[b].powi(e)))
                    }
                })
                .collect();
            MinorValues::Approx { values: vals }
        }
    };
    let out = PluckerVector { k: a.k(), n, subsets: raw.subsets.clone(), values };

    let top = basis_idx[0];
    for j in 0..out.subsets.len() {
        if in_basis[j] {
            continue;
        }
        if out.compare_idx(j, top)? != Ordering::Less {
            return Err(Error::Internal(format!(
                "after normalization {} is not below the collection {s}",
                out.subsets[j]
            )));
        }
    }
    Ok((scaling, out))
}

/// An ordered set partition of all minors into blocks of equal value,
/// smallest first, with each block's common value.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementPartition {
    pub partition: OrderedSetPartition,
    pub values: Vec<BlockValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockValue {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub approx: f64,
}

impl ArrangementPartition {
    /// Block `t` from the top (`t = 1` is the largest block).
    pub fn block_from_top(&self, t: usize) -> Option<&[KSubset]> {
        self.partition.block_from_top(t)
    }

    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }
}

pub fn extract_arrangement(p: &PluckerVector) -> Result<ArrangementPartition> {
    let mut order: Vec<usize> = (0..p.subsets.len()).collect();
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let cmp_or_record = |i: usize, j: usize| -> Ordering {
        if i == j {
            return Ordering::Equal;
        }
        match p.compare_idx(i, j) {
            Ok(o) => o,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Ordering::Equal
            }
        }
    };
    order.sort_by(|&i, &j| cmp_or_record(i, j).then(i.cmp(&j)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match blocks.last_mut() {
            Some(b) if cmp_or_record(b[0], i) == Ordering::Equal => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let values = blocks
        .iter()
        .map(|b| {
            let s = &p.subsets[b[0]];
            BlockValue {
                exact: match &p.values {
                    MinorValues::Exact { root, values } => Some(render_rooted(&values[b[0]], *root)),
                    MinorValues::Approx { .. } => None,
                },
                approx: p.approx(s).expect("own subset"),
            }
        })
        .collect();
    let partition =
        OrderedSetPartition::new(blocks.into_iter().map(|b| b.into_iter().map(|i| p.subsets[i]).collect()).collect())?;
    Ok(ArrangementPartition { partition, values })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkanderaViolation {
    pub i: KSubset,
    pub j: KSubset,
    pub sort1: KSubset,
    pub sort2: KSubset,
}

/// Unsorted pairs `(I, J)` for which `Δ_Sort1 Δ_Sort2 > Δ_I Δ_J` fails.
pub fn skandera_check(p: &PluckerVector) -> Result<Vec<SkanderaViolation>> {
    let mut out = Vec::new();
    for (a, i) in p.subsets.iter().enumerate() {
        for j in &p.subsets[a + 1..] {
            if sorted_pair_unchecked(i, j) {
                continue;
            }
            let (x, y) = sort_merge_unchecked(i, j);
            if p.compare_products([&x, &y], [i, j])? != Ordering::Greater {
                out.push(SkanderaViolation { i: *i, j: *j, sort1: x, sort2: y });
            }
        }
    }
    Ok(out)
}
