use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::KSubset;

/// A `k x n` matrix of exact rationals, row-major, of full rank `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    k: usize,
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(k: usize, n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Parameter(format!("need 1 <= k <= n, got {k} x {n}")));
        }
        if n > crate::subset::MAX_N {
            return Err(Error::SizeLimit(format!("n = {n} exceeds {}", crate::subset::MAX_N)));
        }
        if entries.len() != k * n {
            return Err(Error::Parameter(format!("{k} x {n} matrix needs {} entries, got {}", k * n, entries.len())));
        }
        let m = RationalMatrix { k, n, entries };
        if m.rank() < k {
            return Err(Error::Parameter(format!("matrix has rank {} < {k}", m.rank())));
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter("rows of unequal length".into()));
        }
        Self::new(k, n, rows.into_iter().flatten().collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based row `r`, 0-based column `c`.
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Column `c` (1-based).
    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.k).map(|r| self.get(r, c - 1).clone()).collect()
    }

    pub(crate) fn with_column(&self, c: usize, col: &[BigRational]) -> Self {
        let mut out = self.clone();
        for (r, v) in col.iter().enumerate() {
            out.entries[r * self.n + c - 1] = v.clone();
        }
        out
    }

    /// Multiplies column `i` by `alpha[i - 1]`.
    pub fn scale_columns(&self, alpha: &[BigRational]) -> Result<Self> {
        if alpha.len() != self.n {
            return Err(Error::Parameter(format!("{} scale factors for {} columns", alpha.len(), self.n)));
        }
        let mut out = self.clone();
        for r in 0..self.k {
            for (c, a) in alpha.iter().enumerate() {
                out.entries[r * self.n + c] *= a;
            }
        }
        Ok(out)
    }

    /// The maximal minor on the columns of `cols`.
    pub fn minor(&self, cols: &KSubset) -> Result<BigRational> {
        if cols.n() != self.n || cols.k() != self.k {
            return Err(Error::Parameter(format!("{cols} is not a {}-subset of [{}]", self.k, self.n)));
        }
        let idx: Vec<usize> = cols.iter().map(|c| c as usize - 1).collect();
        let mut a: Vec<Vec<BigRational>> =
            (0..self.k).map(|r| idx.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        Ok(determinant(&mut a))
    }

    pub fn rank(&self) -> usize {
        let mut a = self.rows();
        let (rows, cols) = (self.k, self.n);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in rank + 1..rows {
                if !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for j in c..cols {
                        let d = &f * &a[rank][j];
                        a[r][j] -= d;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Determinant by Gaussian elimination; consumes the scratch matrix.
pub(crate) fn determinant(a: &mut [Vec<BigRational>]) -> BigRational {
    let m = a.len();
    let mut det = BigRational::one();
    for c in 0..m {
        let Some(p) = (c..m).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..m {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for j in c..m {
                    let d = &f * &a[c][j];
                    a[r][j] -= d;
                }
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination, `None` if singular.
pub(crate) fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let m = a.len();
    let mut left: Vec<Vec<BigRational>> = a.to_vec();
    let mut right: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| !left[r][c].is_zero())?;
        left.swap(p, c);
        right.swap(p, c);
        let inv = left[c][c].recip();
        for j in 0..m {
            left[c][j] *= &inv;
            right[c][j] *= &inv;
        }
        for r in 0..m {
            if r != c && !left[r][c].is_zero() {
                let f = left[r][c].clone();
                for j in 0..m {
                    let dl = &f * &left[c][j];
                    left[r][j] -= dl;
                    let dr = &f * &right[c][j];
                    right[r][j] -= dr;
                }
            }
        }
    }
    Some(right)
}

/// Renders a rational as `"p/q"` (always with a denominator).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let r = if t.contains('/') {
        BigRational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?
    } else {
        BigRational::from_integer(BigInt::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?)
    };
    Ok(r)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    k: usize,
    n: usize,
    entries: Vec<Vec<serde_json::Value>>,
}

impl RationalMatrix {
    pub fn to_json_value(&self) -> serde_json::Value {
        let entries = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| serde_json::Value::String(format_rational(x))).collect())
            .collect();
        serde_json::to_value(MatrixJson { k: self.k, n: self.n, entries }).expect("plain data")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix json: {e}")))?;
        if raw.entries.len() != raw.k || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(Error::Parse(format!("entries do not form a {} x {} array", raw.k, raw.n)));
        }
        let mut entries = Vec::with_capacity(raw.k * raw.n);
        for v in raw.entries.iter().flatten() {
            entries.push(match v {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(x) if x.is_i64() => BigRational::from_integer(x.as_i64().unwrap().into()),
                other => return Err(Error::Parse(format!("matrix entry {other} is not a \"p/q\" string or integer"))),
            });
        }
        Self::new(raw.k, raw.n, entries)
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `k x n` matrix with rows `x_j^(i-1)`; totally positive when the nodes
/// are positive and strictly increasing.
pub fn vandermonde(k: usize, nodes: &[BigRational]) -> Result<RationalMatrix> {
    let n = nodes.len();
    let mut entries = Vec::with_capacity(k * n);
    for i in 0..k {
        for x in nodes {
            entries.push(num::pow(x.clone(), i));
        }
    }
    RationalMatrix::new(k, n, entries)
}

pub const NODE_DENOMINATOR: i64 = 1000;

/// A totally positive `k x n` point: a power-basis matrix on `n` distinct
/// random nodes in `(0, n + 1)` with denominator [`NODE_DENOMINATOR`].
pub fn sample_positive_point(k: usize, n: usize, seed: u64) -> Result<RationalMatrix> {
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = (n + 1) * NODE_DENOMINATOR as usize - 1;
    let mut picks: Vec<usize> = sample(&mut rng, slots, n).into_iter().map(|x| x + 1).collect();
    picks.sort_unstable();
    let nodes: Vec<BigRational> =
        picks.into_iter().map(|p| BigRational::new(BigInt::from(p), BigInt::from(NODE_DENOMINATOR))).collect();
    let m = vandermonde(k, &nodes)?;
    let subsets = crate::subset::all_subsets(n, k);
    for s in &subsets {
        if !m.minor(s)?.is_positive() {
            return Err(Error::Internal(format!("sampled point has non-positive minor at {s}")));
        }
    }
    Ok(m)
}
