//! Quaternions, dual numbers and dual quaternions over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// `w + x𝐢 + y𝐣 + z𝐤`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub w: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Quaternion {
    pub fn new(w: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(w.into(), x.into(), y.into(), z.into())
    }

    pub fn zero() -> Self {
        Quaternion::default()
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn unit_i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn unit_j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn unit_k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn scalar(s: Scalar) -> Self {
        Quaternion::new(s, Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    /// The `k`-th basis element `1, 𝐢, 𝐣, 𝐤`.
    pub fn basis(k: usize) -> Self {
        let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        c[k] = Scalar::one();
        Quaternion::from_coords(c)
    }

    pub fn from_coords(c: [Scalar; 4]) -> Self {
        let [w, x, y, z] = c;
        Quaternion { w, x, y, z }
    }

    pub fn from_slice(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), 4, "quaternion needs four coordinates");
        Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    pub fn coords(&self) -> [Scalar; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn coords_ref(&self) -> [&Scalar; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// Quaternion conjugate: negates the vector part.
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Complex conjugation applied to every coefficient.
    pub fn complex_conj(&self) -> Quaternion {
        Quaternion::new(self.w.conj(), self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// Euclidean bilinear form `w w' + x x' + y y' + z z'`, i.e. the scalar part
    /// of `q r̄` (no complex conjugation).
    pub fn dot(&self, other: &Quaternion) -> Scalar {
        &self.w * &other.w + &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    /// `q q̄`.
    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &Scalar) -> Quaternion {
        Quaternion::new(&self.w * s, &self.x * s, &self.y * s, &self.z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.coords_ref().iter().all(|c| c.is_zero())
    }

    pub fn is_pure(&self) -> bool {
        self.w.is_zero()
    }

    pub fn vector_part(&self) -> Quaternion {
        Quaternion::new(Scalar::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn inverse(&self) -> Option<Quaternion> {
        let n = self.norm_sq().checked_inv()?;
        Some(self.conj().scale(&n))
    }

    pub fn is_exact(&self) -> bool {
        self.coords_ref().iter().all(|c| c.is_exact())
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, b: &Quaternion) -> Quaternion {
        let a = self;
        Quaternion {
            w: &a.w * &b.w - &a.x * &b.x - &a.y * &b.y - &a.z * &b.z,
            x: &a.w * &b.x + &a.x * &b.w + &a.y * &b.z - &a.z * &b.y,
            y: &a.w * &b.y - &a.x * &b.z + &a.y * &b.w + &a.z * &b.x,
            z: &a.w * &b.z + &a.x * &b.y - &a.y * &b.x + &a.z * &b.w,
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        &self * &b
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, b: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &b.w, &self.x + &b.x, &self.y + &b.y, &self.z + &b.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        &self + &b
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, b: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &b.w, &self.x - &b.x, &self.y - &b.y, &self.z - &b.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        &self - &b
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

/// `re + ε du` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DualNumber {
    pub re: Scalar,
    pub du: Scalar,
}

impl DualNumber {
    pub fn new(re: Scalar, du: Scalar) -> Self {
        DualNumber { re, du }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
}

impl Mul for &DualNumber {
    type Output = DualNumber;
    fn mul(self, b: &DualNumber) -> DualNumber {
        DualNumber::new(&self.re * &b.re, &self.re * &b.du + &self.du * &b.re)
    }
}

/// `primal + ε dual`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DualQuaternion {
    pub primal: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub fn new(primal: Quaternion, dual: Quaternion) -> Self {
        DualQuaternion { primal, dual }
    }

    pub fn zero() -> Self {
        DualQuaternion::default()
    }

    pub fn one() -> Self {
        DualQuaternion::new(Quaternion::one(), Quaternion::zero())
    }

    /// `p + ε·0`.
    pub fn real(p: Quaternion) -> Self {
        DualQuaternion::new(p, Quaternion::zero())
    }

    /// `ε d`.
    pub fn eps(d: Quaternion) -> Self {
        DualQuaternion::new(Quaternion::zero(), d)
    }

    pub fn scalar(s: Scalar) -> Self {
        DualQuaternion::real(Quaternion::scalar(s))
    }

    /// The `k`-th basis element `1, 𝐢, 𝐣, 𝐤, ε, ε𝐢, ε𝐣, ε𝐤`.
    pub fn basis(k: usize) -> Self {
        if k < 4 {
            DualQuaternion::real(Quaternion::basis(k))
        } else {
            DualQuaternion::eps(Quaternion::basis(k - 4))
        }
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        DualQuaternion::new(
            Quaternion::from_ints(c[0], c[1], c[2], c[3]),
            Quaternion::from_ints(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn from_slice(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), 8, "dual quaternion needs eight coordinates");
        DualQuaternion::new(Quaternion::from_slice(&c[..4]), Quaternion::from_slice(&c[4..]))
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut v = self.primal.coords().to_vec();
        v.extend(self.dual.coords());
        v
    }

    /// Quaternion conjugation of both parts.
    pub fn conj(&self) -> DualQuaternion {
        DualQuaternion::new(self.primal.conj(), self.dual.conj())
    }

    /// `p̄ − ε d̄`: quaternion conjugation combined with `ε ↦ −ε`.
    pub fn eps_conj(&self) -> DualQuaternion {
        DualQuaternion::new(self.primal.conj(), -self.dual.conj())
    }

    pub fn complex_conj(&self) -> DualQuaternion {
        DualQuaternion::new(self.primal.complex_conj(), self.dual.complex_conj())
    }

    /// `q q̄`, always a dual number.
    pub fn norm(&self) -> DualNumber {
        let re = self.primal.norm_sq();
        let du = &self.primal.dot(&self.dual) + &self.dual.dot(&self.primal);
        DualNumber::new(re, du)
    }

    /// Whether the dual part of the norm vanishes (`p d̄ + d p̄ = 0`).
    pub fn study_condition(&self) -> bool {
        self.norm().du.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> DualQuaternion {
        DualQuaternion::new(self.primal.scale(s), self.dual.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.dual.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.primal.is_exact() && self.dual.is_exact()
    }

    /// Whether `q + q̄ = 0`.
    pub fn is_pure(&self) -> bool {
        self.primal.w.is_zero() && self.dual.w.is_zero()
    }

    /// Two-sided inverse, available whenever the primal part is invertible.
    pub fn inverse(&self) -> Option<DualQuaternion> {
        let pi = self.primal.inverse()?;
        let d = -&(&(&pi * &self.dual) * &pi);
        Some(DualQuaternion::new(pi, d))
    }
}

impl Mul for &DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, b: &DualQuaternion) -> DualQuaternion {
        let primal = &self.primal * &b.primal;
        let dual = &(&self.primal * &b.dual) + &(&self.dual * &b.primal);
        DualQuaternion::new(primal, dual)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, b: DualQuaternion) -> DualQuaternion {
        &self * &b
    }
}

impl Add for &DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, b: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(&self.primal + &b.primal, &self.dual + &b.dual)
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, b: DualQuaternion) -> DualQuaternion {
        &self + &b
    }
}

impl Sub for &DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, b: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(&self.primal - &b.primal, &self.dual - &b.dual)
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, b: DualQuaternion) -> DualQuaternion {
        &self - &b
    }
}

impl Neg for &DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-&self.primal, -&self.dual)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        -&self
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε{}", self.primal, self.dual)
    }
}

/// Dual quaternion multiplication.
pub fn dq_mul(a: &DualQuaternion, b: &DualQuaternion) -> DualQuaternion {
    a * b
}

/// Dual quaternion norm `q q̄`.
pub fn dq_norm(q: &DualQuaternion) -> DualNumber {
    q.norm()
}

pub fn study_condition(q: &DualQuaternion) -> bool {
    q.study_condition()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Quaternion {
        Quaternion::unit_k()
    }
    fn i() -> Quaternion {
        Quaternion::unit_i()
    }
    fn j() -> Quaternion {
        Quaternion::unit_j()
    }

    #[test]
    fn hamilton_relations() {
        let m1 = Quaternion::from_ints(-1, 0, 0, 0);
        assert_eq!(&i() * &i(), m1);
        assert_eq!(&j() * &j(), m1);
        assert_eq!(&k() * &k(), m1);
        assert_eq!(&(&i() * &j()) * &k(), m1);
        assert_eq!(&i() * &j(), k());
        assert_eq!(&j() * &i(), -k());
    }

    #[test]
    fn dual_identity_and_hand_expansions() {
        let q = DualQuaternion::new(Quaternion::from_ints(1, 2, 3, 4), Quaternion::from_ints(-1, 0, 5, 2));
        assert_eq!(dq_mul(&DualQuaternion::one(), &q), q);

        // k (i + εk) = j − ε
        let a = DualQuaternion::real(k());
        let b = DualQuaternion::new(i(), k());
        let expect = DualQuaternion::new(j(), Quaternion::from_ints(-1, 0, 0, 0));
        assert_eq!(dq_mul(&a, &b), expect);

        // (i + εj) conj(i + εj) = 1 + ε0
        let c = DualQuaternion::new(i(), j());
        let n = dq_mul(&c, &c.conj());
        assert_eq!(n, DualQuaternion::one());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(dq_norm(&DualQuaternion::one()), DualNumber::new(Scalar::one(), Scalar::zero()));
        let q = DualQuaternion::new(i(), k());
        assert_eq!(dq_norm(&q), DualNumber::new(Scalar::one(), Scalar::zero()));
        // i + 𝐢 with complex i lies on the null cone
        let n1 = DualQuaternion::real(Quaternion::new(Scalar::i(), Scalar::one(), Scalar::zero(), Scalar::zero()));
        assert!(dq_norm(&n1).is_zero());
    }

    #[test]
    fn study_condition_examples() {
        assert!(study_condition(&DualQuaternion::new(Quaternion::one(), i())));
        assert!(!study_condition(&DualQuaternion::new(Quaternion::one(), Quaternion::one())));
        let q = DualQuaternion::new(j(), Quaternion::from_ints(-1, 0, 0, 0));
        // oracle: explicit dual part of the norm
        let n = dq_mul(&q, &q.conj());
        assert!(n.dual.is_zero());
        assert!(study_condition(&q));
    }

    #[test]
    fn inverse_is_two_sided() {
        let q = DualQuaternion::new(Quaternion::from_ints(1, 2, 0, -1), Quaternion::from_ints(3, 1, 1, 0));
        let inv = q.inverse().unwrap();
        assert_eq!(&q * &inv, DualQuaternion::one());
        assert_eq!(&inv * &q, DualQuaternion::one());
        assert!(DualQuaternion::eps(i()).inverse().is_none());
    }
}
