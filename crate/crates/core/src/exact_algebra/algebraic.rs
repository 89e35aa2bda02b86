//! Real algebraic numbers as (squarefree polynomial, isolating interval).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::QPoly;
use super::AlgebraError;

/// A real root of an integer polynomial, pinned down by a rational interval.
///
/// When `lo == hi` the number is that rational exactly. Otherwise the
/// defining polynomial is squarefree, nonzero at both endpoints, and has
/// exactly one root strictly between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    poly: QPoly,
    lo: BigRational,
    hi: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) * half()
}

impl AlgebraicReal {
    pub fn from_rational(r: BigRational) -> Self {
        let poly = QPoly::new(vec![-r.clone(), BigRational::one()]);
        Self {
            poly,
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// All real roots of `p`, in increasing order.
    pub fn real_roots(p: &QPoly) -> Result<Vec<AlgebraicReal>, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let f = p.squarefree();
        let bound = f.root_bound();
        let mut out = Vec::new();
        isolate(&f, -bound.clone(), bound, &mut out);
        Ok(out)
    }

    /// Narrows the isolating interval until its width is at most `width`.
    pub fn refine(&mut self, width: &BigRational) {
        while &self.hi - &self.lo > *width {
            self.bisect();
        }
    }

    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let m = midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&m);
        if sm == Ordering::Equal {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == self.poly.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Exact sign of `p` evaluated at this number.
    pub fn sign_of(&self, p: &QPoly) -> Ordering {
        if p.is_zero() {
            return Ordering::Equal;
        }
        if self.is_rational() {
            return p.sign_at(&self.lo);
        }
        let common = self.poly.gcd(p);
        if common.degree().unwrap_or(0) > 0 && common.count_roots_between(&self.lo, &self.hi) > 0 {
            return Ordering::Equal;
        }
        // p(α) ≠ 0, so shrinking the interval eventually excludes every root of p.
        let sp = p.squarefree();
        let mut me = self.clone();
        loop {
            if me.is_rational() {
                return p.sign_at(&me.lo);
            }
            let s_lo = p.sign_at(&me.lo);
            if s_lo != Ordering::Equal
                && p.sign_at(&me.hi) != Ordering::Equal
                && sp.count_roots_between(&me.lo, &me.hi) == 0
            {
                return s_lo;
            }
            me.bisect();
        }
    }

    /// Compares with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let lin = QPoly::new(vec![-r.clone(), BigRational::one()]);
        self.sign_of(&lin)
    }

    pub fn to_f64(&self) -> f64 {
        let mut me = self.clone();
        me.refine(&BigRational::new(BigInt::one(), BigInt::from(1u64) << 60));
        let m = midpoint(&me.lo, &me.hi);
        rational_to_f64(&m)
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Bisection isolation of the roots of squarefree `f` in (lo, hi); endpoints
/// are nonroots.
fn isolate(f: &QPoly, lo: BigRational, hi: BigRational, out: &mut Vec<AlgebraicReal>) {
    let n = f.count_roots_between(&lo, &hi);
    match n {
        0 => {}
        1 => out.push(AlgebraicReal {
            poly: f.clone(),
            lo,
            hi,
        }),
        _ => {
            let m = midpoint(&lo, &hi);
            if f.sign_at(&m) != Ordering::Equal {
                isolate(f, lo, m.clone(), out);
                isolate(f, m, hi, out);
                return;
            }
            // m is an exact rational root; carve out a root-free neighbourhood.
            let mut delta = (&hi - &lo) * half() * half();
            loop {
                let a = &m - &delta;
                let b = &m + &delta;
                if f.sign_at(&a) != Ordering::Equal
                    && f.sign_at(&b) != Ordering::Equal
                    && f.count_roots_between(&a, &b) == 1
                {
                    isolate(f, lo, a, out);
                    out.push(AlgebraicReal::from_rational(m));
                    isolate(f, b, hi, out);
                    return;
                }
                delta *= half();
            }
        }
    }
}
