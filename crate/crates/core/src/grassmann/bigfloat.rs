//! Binary floating point with a fixed mantissa width and a running bound on
//! the relative error, enough for products, quotients and integer powers of
//! positive rationals.

use std::cmp::Ordering;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// `mant * 2^exp`, within relative distance `err` of the true value.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    err: f64,
    prec: u32,
}

fn ulp(prec: u32) -> f64 {
    2f64.powi(1 - prec as i32)
}

impl BigFloat {
    pub fn one(prec: u32) -> Self {
        BigFloat { mant: BigInt::one(), exp: 0, err: 0.0, prec }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return BigFloat { mant: BigInt::zero(), exp: 0, err: 0.0, prec };
        }
        let num = r.numer();
        let den = r.denom();
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let (q, rem) = if shift >= 0 {
            (num << shift as usize).div_rem(den)
        } else {
            num.div_rem(&(den << (-shift) as usize))
        };
        let err = if rem.is_zero() { 0.0 } else { ulp(prec) };
        BigFloat { mant: q, exp: -shift, err, prec }.rounded()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Bound on the relative error of this value.
    pub fn relative_error(&self) -> f64 {
        self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err == 0.0
    }

    fn rounded(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let s = bits - self.prec as u64;
            let low_mask = (BigInt::one() << s as usize) - 1u32;
            let inexact = !(self.mant.abs() & low_mask).is_zero();
            self.mant >>= s as usize;
            self.exp += s as i64;
            if inexact {
                self.err += ulp(self.prec) * (1.0 + self.err);
            }
        }
        self
    }

    pub fn mul(&self, other: &BigFloat) -> BigFloat {
        let err = self.err + other.err + self.err * other.err;
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp, err, prec: self.prec.max(other.prec) }
            .rounded()
    }

    pub fn div(&self, other: &BigFloat) -> BigFloat {
        assert!(!other.mant.is_zero(), "division by zero");
        let prec = self.prec.max(other.prec);
        let shift = (prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let (q, rem) = (&self.mant << shift as usize).div_rem(&other.mant);
        let mut err = (self.err + other.err) / (1.0 - other.err);
        if !rem.is_zero() {
            err += ulp(prec) * (1.0 + err);
        }
        BigFloat { mant: q, exp: self.exp - other.exp - shift, err, prec }.rounded()
    }

    pub fn powi(&self, e: i64) -> BigFloat {
        let mut base = if e < 0 { BigFloat::one(self.prec).div(self) } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = BigFloat::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn sign(&self) -> Sign {
        self.mant.sign()
    }

    /// `log2 |x|`, or `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let keep = bits.min(60);
        let top = (self.mant.abs() >> (bits - keep) as usize).to_f64().unwrap_or(1.0);
        top.log2() + (bits - keep + self.exp) as f64
    }

    pub fn to_f64(&self) -> f64 {
        match self.sign() {
            Sign::NoSign => 0.0,
            s => {
                let v = self.log2_abs().exp2();
                if s == Sign::Minus {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Compares the true values, or `None` when the error bounds overlap.
    pub fn cmp_certified(&self, other: &BigFloat) -> Option<Ordering> {
        let (sa, sb) = (self.sign(), other.sign());
        if self.is_exact() && other.is_exact() {
            return Some(self.exact_cmp(other));
        }
        if sa != sb && self.err < 1.0 && other.err < 1.0 {
            return Some(sign_rank(sa).cmp(&sign_rank(sb)));
        }
        let (la, lb) = (self.log2_abs(), other.log2_abs());
        if (la - lb).abs() > 2.0 && self.err < 0.25 && other.err < 0.25 {
            let by_mag = la.partial_cmp(&lb)?;
            return Some(if sa == Sign::Minus { by_mag.reverse() } else { by_mag });
        }
        let m = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - m) as usize;
        let b = &other.mant << (other.exp - m) as usize;
        let d: BigInt = a - b;
        if d.is_zero() {
            return None;
        }
        let ld = BigFloat { mant: d.clone(), exp: m, err: 0.0, prec: self.prec }.log2_abs();
        let bound = (self.err.log2() + la).max(other.err.log2() + lb) + 2.0;
        if ld > bound {
            Some(if d.is_positive() { Ordering::Greater } else { Ordering::Less })
        } else {
            None
        }
    }

    fn exact_cmp(&self, other: &BigFloat) -> Ordering {
        let m = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - m) as usize;
        let b = &other.mant << (other.exp - m) as usize;
        a.cmp(&b)
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_values_stay_exact() {
        let x = BigFloat::from_rational(&q(3, 4), 64);
        assert!(x.is_exact());
        let y = x.mul(&BigFloat::from_rational(&q(4, 3), 64));
        assert!(y.relative_error() > 0.0);
        assert!((y.to_f64() - 1.0).abs() < 1e-15);
        assert!(BigFloat::from_rational(&q(5, 1), 64).powi(3).is_exact());
    }

    #[test]
    fn powers_and_quotients_are_certified() {
        let x = BigFloat::from_rational(&q(7, 3), 128);
        let y = x.powi(-5).mul(&x.powi(5));
        assert!(y.relative_error() < 1e-30);
        assert_eq!(y.cmp_certified(&BigFloat::one(128)), None);
        let a = BigFloat::from_rational(&q(1, 3), 128);
        let b = BigFloat::from_rational(&q(1_000_000_001, 3_000_000_000), 128);
        assert_eq!(a.cmp_certified(&b), Some(Ordering::Less));
        assert_eq!(b.cmp_certified(&a), Some(Ordering::Greater));
        assert_eq!(a.cmp_certified(&a.clone()), None);
    }

    #[test]
    fn signs_and_magnitudes() {
        let a = BigFloat::from_rational(&q(-2, 7), 64);
        let b = BigFloat::from_rational(&q(1, 9), 64);
        assert_eq!(a.cmp_certified(&b), Some(Ordering::Less));
        let big = BigFloat::from_rational(&q(1 << 40, 3), 64);
        assert_eq!(big.cmp_certified(&b), Some(Ordering::Greater));
        assert!((big.to_f64() - (1u64 << 40) as f64 / 3.0).abs() < 1.0);
    }
}
