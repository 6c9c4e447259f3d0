//! Exact univariate polynomials over `Q` and unit-circle root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let d = divisor.0.len() - 1;
        let lead = divisor.lead();
        while r.len() > d && !r.is_empty() {
            let shift = r.len() - 1 - d;
            let factor = r.last().expect("nonempty") / lead;
            for (i, c) in divisor.0.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.lead().clone();
            a.scale(&(BigRational::one() / l))
        }
    }

    /// Sign at `+∞` (`positive`) or `−∞`.
    fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = if self.lead().is_positive() { 1 } else { -1 };
        match self.degree() {
            Some(d) if !positive && d % 2 == 1 => -s,
            _ => s,
        }
    }
}

/// Signed remainder sequence `f0, f1, −rem(f0, f1), …`.
fn remainder_sequence(f0: &Poly, f1: &Poly) -> Vec<Poly> {
    let mut seq = vec![f0.clone()];
    if f1.is_zero() {
        return seq;
    }
    seq.push(f1.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(r.scale(&-BigRational::one()));
    }
}

fn variations(seq: &[Poly], positive: bool) -> i64 {
    let signs: Vec<i32> = seq
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.sign_at_infinity(positive))
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Cauchy index of `f1/f0` over the real line.
pub fn cauchy_index(f1: &Poly, f0: &Poly) -> i64 {
    if f0.is_zero() {
        return 0;
    }
    let seq = remainder_sequence(f0, f1);
    variations(&seq, false) - variations(&seq, true)
}

/// Number of distinct real roots.
pub fn real_root_count(p: &Poly) -> i64 {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    cauchy_index(&p.derivative(), p)
}

/// `det(zI − a)` by Faddeev–LeVerrier, together with the adjugate-based
/// inverse numerator `M_m` (so that `a·M_m = −c₀·I`).
pub fn characteristic_polynomial(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    assert!(a.is_square());
    let m = a.rows();
    let mut coeffs = vec![BigInt::zero(); m + 1];
    coeffs[m] = BigInt::one();
    let mut mk = IntMatrix::zeros(m, m);
    for k in 1..=m {
        mk = a
            .mul(&mk)
            .add(&IntMatrix::identity(m).scale(&coeffs[m - k + 1]));
        let am = a.mul(&mk);
        let trace: BigInt = (0..m).map(|i| am.get(i, i).clone()).sum();
        coeffs[m - k] = -trace / BigInt::from(k);
    }
    (coeffs, mk)
}

/// Outcome of counting roots relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleCount {
    /// Number of roots (with multiplicity) of modulus greater than one.
    Outside(usize),
    /// Some root lies on the unit circle.
    OnCircle,
}

/// Counts roots outside the unit circle via the Cayley transform
/// `q(s) = (1 − s)^m p((1 + s)/(1 − s))`, which maps `|z| > 1` to `Re s > 0`
/// and the circle to the imaginary axis.
pub fn count_outside_unit_circle(p: &Poly) -> CircleCount {
    let m = p.degree().expect("nonzero polynomial");
    if p.eval(&-BigRational::one()).is_zero() {
        return CircleCount::OnCircle;
    }
    let one_plus = Poly::from_i64(&[1, 1]);
    let one_minus = Poly::from_i64(&[1, -1]);
    let mut q = Poly::new(Vec::new());
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut term = Poly::from_i64(&[1]).scale(c);
        for _ in 0..k {
            term = term.mul(&one_plus);
        }
        for _ in k..m {
            term = term.mul(&one_minus);
        }
        q = q.add(&term);
    }
    // q(iy) = U(y) + i V(y).
    let mut u = vec![BigRational::zero(); m + 1];
    let mut v = vec![BigRational::zero(); m + 1];
    for (k, c) in q.coeffs().iter().enumerate() {
        let c = c.clone();
        match k % 4 {
            0 => u[k] = c,
            1 => v[k] = c,
            2 => u[k] = -c,
            _ => v[k] = -c,
        }
    }
    let (u, v) = (Poly::new(u), Poly::new(v));
    let g = u.gcd(&v);
    if g.degree().unwrap_or(0) > 0 && real_root_count(&g) > 0 {
        return CircleCount::OnCircle;
    }
    let index = if m % 2 == 1 {
        cauchy_index(&u, &v)
    } else {
        -cauchy_index(&v, &u)
    };
    let outside = (m as i64 - index) / 2;
    CircleCount::Outside(outside as usize)
}
