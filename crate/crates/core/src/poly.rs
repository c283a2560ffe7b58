//! Univariate polynomials over [`Scalar`] and root finding.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Scalar;

/// Polynomial with coefficients stored from the constant term upwards.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Poly::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().inv())
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            rem[k + dd] = Scalar::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
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

    /// Product of the distinct irreducible factors, made monic.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Interpolating polynomial through `(xs[k], ys[k])`.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let mut out = Poly::zero();
        for (k, (xk, yk)) in xs.iter().zip(ys).enumerate() {
            let mut basis = Poly::constant(Scalar::one());
            let mut denom = Scalar::one();
            for (j, xj) in xs.iter().enumerate() {
                if j != k {
                    basis = basis.mul(&Poly::linear_root(xj));
                    denom = &denom * &(xk - xj);
                }
            }
            out = out.add(&basis.scale(&(yk / &denom)));
        }
        out
    }

    pub fn to_complex(&self, tol: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.to_complex(tol)).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Distinct roots of an exact polynomial that lie in the Gaussian rationals.
#[derive(Clone, Debug)]
pub struct ExactRoots {
    pub roots: Vec<Scalar>,
    /// Whether every root of the polynomial was found.
    pub complete: bool,
}

/// Finds the distinct roots of `p` in `Q(i)`.
///
/// Linear and quadratic factors use closed forms. Higher degrees locate
/// roots numerically, refine them by Newton steps in exact dyadic arithmetic,
/// snap to the only admissible denominators and verify exactly.
pub fn exact_roots(p: &Poly) -> ExactRoots {
    assert!(p.is_exact(), "exact root finding needs exact coefficients");
    let mut roots = Vec::new();
    if p.is_zero() {
        return ExactRoots { roots, complete: false };
    }
    let mut f = p.square_free();
    loop {
        match f.degree() {
            None | Some(0) => return ExactRoots { roots, complete: true },
            Some(1) => {
                roots.push(-&f.coeff(0) / &f.coeff(1));
                return ExactRoots { roots, complete: true };
            }
            Some(2) => {
                let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
                let disc = &(&b * &b) - &(&Scalar::int(4) * &(&a * &c));
                return match disc.sqrt() {
                    Some(s) => {
                        let two_a = &Scalar::int(2) * &a;
                        roots.push(&(-&b + &s) / &two_a);
                        roots.push(&(-&b - &s) / &two_a);
                        ExactRoots { roots, complete: true }
                    }
                    None => ExactRoots { roots, complete: false },
                };
            }
            Some(_) => {
                let found = float_roots_c64(&f)
                    .into_iter()
                    .find_map(|z| snap_root(&f, z));
                match found {
                    Some(r) => {
                        f = f.divrem(&Poly::linear_root(&r)).0;
                        roots.push(r);
                    }
                    None => return ExactRoots { roots, complete: false },
                }
            }
        }
    }
}

/// Complex floating point roots (with multiplicity) carrying tolerance `tol`.
pub fn float_roots(p: &Poly, tol: f64) -> Vec<Scalar> {
    float_roots_c64(p)
        .into_iter()
        .map(|z| Scalar::complex(z.re, z.im, tol))
        .collect()
}

fn float_roots_c64(p: &Poly) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.lead().to_c64();
    let c: Vec<Complex64> = p.coeffs.iter().map(|x| x.to_c64() / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let deriv = |z: Complex64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::zero(), |acc, (k, a)| acc * z + a * k as f64)
    };
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * (radius / 2.0).max(0.5).min(radius))
        .collect();
    for _ in 0..1000 {
        let mut delta: f64 = 0.0;
        for k in 0..n {
            let mut den = Complex64::one();
            for j in 0..n {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            delta = delta.max(step.norm() / (1.0 + z[k].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zk);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(*zk) / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zk -= step;
        }
    }
    z
}

fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

fn round_to_dyadic(r: &BigRational, bits: usize) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

fn round_rat(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

/// Clears denominators so every coefficient is a Gaussian integer.
fn gaussian_integer_coeffs(p: &Poly) -> Vec<(BigInt, BigInt)> {
    let mut lcm = BigInt::one();
    for c in &p.coeffs {
        let (re, im) = c.exact_parts().expect("exact coefficients");
        lcm = lcm.lcm(re.denom()).lcm(im.denom());
    }
    let l = BigRational::from_integer(lcm);
    p.coeffs
        .iter()
        .map(|c| {
            let (re, im) = c.exact_parts().unwrap();
            ((re * &l).to_integer(), (im * &l).to_integer())
        })
        .collect()
}

/// Recovers an exact root of the square-free polynomial `f` near `z`.
///
/// A root in `Q(i)` of a polynomial with Gaussian integer coefficients and
/// leading coefficient `c` has the form `G / c` with `G` a Gaussian integer,
/// so after refining `z` to error below `1/(2|c|)` rounding `c·z` decides it.
fn snap_root(f: &Poly, z: Complex64) -> Option<Scalar> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return None;
    }
    let ints = gaussian_integer_coeffs(f);
    let (lr, li) = ints.last().cloned().unwrap();
    let norm_lead = &lr * &lr + &li * &li;
    let bits = norm_lead.bits() as usize + 64;
    let g = Poly::new(
        ints.iter()
            .map(|(a, b)| Scalar::gaussian(BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone())))
            .collect(),
    );
    let dg = g.derivative();
    let mut x = Scalar::gaussian(rat_from_f64(z.re)?, rat_from_f64(z.im)?);
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    for _ in 0..200 {
        let d = dg.eval(&x);
        let Some(dinv) = d.checked_inv() else {
            break;
        };
        let step = &g.eval(&x) * &dinv;
        let (sr, si) = step.exact_parts().unwrap();
        let (xr, xi) = (&x - &step).exact_parts().unwrap();
        x = Scalar::gaussian(round_to_dyadic(&xr, bits + 8), round_to_dyadic(&xi, bits + 8));
        if sr.abs() < eps && si.abs() < eps {
            break;
        }
    }
    let lead = Scalar::gaussian(BigRational::from_integer(lr), BigRational::from_integer(li));
    let (gr, gi) = (&lead * &x).exact_parts().unwrap();
    let candidate = &Scalar::gaussian(
        BigRational::from_integer(round_rat(&gr)),
        BigRational::from_integer(round_rat(&gi)),
    ) / &lead;
    f.eval(&candidate).is_zero().then_some(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| Scalar::int(v)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = ints(&[1, 2, 1]);
        let b = ints(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.eval(&Scalar::int(2)), Scalar::int(9));
        assert_eq!(a.derivative(), ints(&[2, 2]));
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = ints(&[2, -3, 0, 1]);
        let b = ints(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), ints(&[-1, 1]));
        assert_eq!(a.square_free(), ints(&[-2, 1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ints(&[3, 0, -1, 2, 5]);
        let xs: Vec<Scalar> = (0..5).map(Scalar::int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn quartic_with_gaussian_roots() {
        // (t^2 + 1)^2 has the double roots ±i
        let p = ints(&[1, 0, 2, 0, 1]);
        let r = exact_roots(&p);
        assert!(r.complete);
        assert_eq!(r.roots.len(), 2);
        for x in &r.roots {
            assert!(p.eval(x).is_zero());
        }
    }

    #[test]
    fn quartic_with_rational_and_gaussian_roots() {
        // (3t - 2)(t + 5)(2t - (1 + 3i))(t - 7i)
        let t = |c: &[Scalar]| Poly::new(c.to_vec());
        let p = t(&[Scalar::int(-2), Scalar::int(3)])
            .mul(&t(&[Scalar::int(5), Scalar::int(1)]))
            .mul(&t(&[Scalar::gauss_int(-1, -3), Scalar::int(2)]))
            .mul(&t(&[Scalar::gauss_int(0, -7), Scalar::int(1)]));
        let r = exact_roots(&p);
        assert!(r.complete);
        assert_eq!(r.roots.len(), 4);
        assert!(r.roots.contains(&Scalar::ratio(2, 3)));
        assert!(r.roots.contains(&Scalar::gaussian(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 2.into()))));
    }

    #[test]
    fn irrational_roots_are_reported_incomplete() {
        // (t^2 - 2)(t^2 + 1)
        let p = ints(&[-2, 0, -1, 0, 1]);
        let r = exact_roots(&p);
        assert!(!r.complete);
        assert_eq!(r.roots.len(), 2);
        let f = float_roots(&p, 1e-9);
        assert_eq!(f.len(), 4);
        for z in f {
            assert!(p.to_complex(1e-9).eval(&z).is_zero());
        }
    }
}
