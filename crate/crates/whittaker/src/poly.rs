//! Exact univariate polynomials over ℚ.
//!
//! Just enough arithmetic for minimal polynomials of linear operators:
//! multiplication, Euclidean division, gcd/lcm, derivatives, evaluation and a
//! bounded rational-root search.

use crate::ratlin::{rat_i, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial with rational coefficients, stored low degree first with no
/// trailing zeros (so the zero polynomial has an empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Rat::one()])
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly(vec![Rat::zero(), Rat::one()])
    }

    /// `x - r`.
    pub fn x_minus(r: &Rat) -> Poly {
        Poly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        Poly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `self = q·div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = div.0.len() - 1;
        let lead_inv = div.leading().recip();
        if rem.len() <= dd {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.iter().all(|c| c.is_zero()) {
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() * &lead_inv;
            for (i, c) in div.0.iter().enumerate() {
                let t = c * &f;
                rem[shift + i] -= t;
            }
            q[shift] = f;
        }
        (Poly::new(q), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.mul(other).monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_i(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True if the polynomial has no repeated roots.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// All roots, **provided** they are rational with numerator and
    /// denominator bounded by `bound`; returns `None` when the polynomial does
    /// not split into such linear factors (irrational/complex roots, or roots
    /// beyond the bound). Roots are returned with multiplicity, sorted.
    pub fn rational_roots_bounded(&self, bound: u64) -> Option<Vec<Rat>> {
        assert!(!self.is_zero());
        let mut p = self.clone();
        let mut roots = Vec::new();
        // Zero roots first.
        while !p.0.is_empty() && p.0[0].is_zero() {
            roots.push(Rat::zero());
            p = Poly::new(p.0[1..].to_vec());
        }
        while p.degree() > 0 {
            let (a0, ad) = integer_ends(&p);
            let nums = small_divisors(&a0, bound);
            let dens = small_divisors(&ad, bound);
            let mut found = None;
            'search: for n in &nums {
                for d in &dens {
                    for sign in [1i64, -1] {
                        let cand = Rat::new(n * BigInt::from(sign), d.clone());
                        if p.eval(&cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            let r = found?;
            let (q, rem) = p.divrem(&Poly::x_minus(&r));
            debug_assert!(rem.is_zero());
            roots.push(r);
            p = q;
        }
        roots.sort();
        Some(roots)
    }
}

/// Constant and leading coefficients of the primitive integer multiple.
fn integer_ends(p: &Poly) -> (BigInt, BigInt) {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        if !c.is_zero() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let ints: Vec<BigInt> =
        p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    (ints[0].abs(), ints.last().unwrap().abs())
}

/// Divisors of `n` that are ≤ `bound` (plus `|n|` itself if small enough to
/// enumerate exactly), by trial division.
fn small_divisors(n: &BigInt, bound: u64) -> Vec<BigInt> {
    if n.is_zero() {
        // Only happens transiently; a zero constant term was stripped before.
        return vec![BigInt::one()];
    }
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let limit = BigInt::from(bound);
    while d <= limit && d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}
