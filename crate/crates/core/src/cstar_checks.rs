//! Cones of the matrix algebra `M_n(ℂ)` and its dual, in floating point.
//!
//! `M_n` and its dual are both realised as `n×n` complex matrices, a
//! functional `φ` by the density `ρ` with `φ(a) = tr(ρa)`. The real pairing
//! is `Re tr(ρa)`. Elements carry the operator norm, functionals the trace
//! norm. Positive elements and functionals are the positive semidefinite
//! matrices; self-adjoint ones are the hermitian matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::random;

/// Default relative tolerance for sampled inequalities.
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Default relative tolerance for identities.
pub const IDENTITY_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix(pub DMatrix<Complex64>);

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        CMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `(a + a*)/2`.
    pub fn real_part(&self) -> Self {
        CMatrix((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// `(a − a*)/(2i)`, so that `a = re + i·im`.
    pub fn imag_part(&self) -> Self {
        CMatrix((&self.0 - self.0.adjoint()) * Complex64::new(0.0, -0.5))
    }

    /// Frobenius distance to the adjoint.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.0 - self.0.adjoint()).norm()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.0.clone().svd(false, false).singular_values.iter().cloned().collect()
    }

    pub fn operator_norm(&self) -> f64 {
        self.singular_values().into_iter().fold(0.0, f64::max)
    }

    pub fn trace_norm(&self) -> f64 {
        self.singular_values().into_iter().sum()
    }

    /// Eigenvalues of the hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.real_part().0.symmetric_eigen().eigenvalues.iter().cloned().collect();
        e.sort_by(f64::total_cmp);
        e
    }

    pub fn scale(&self, z: Complex64) -> Self {
        CMatrix(&self.0 * z)
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        CMatrix(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        CMatrix(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        CMatrix(&self.0 * &other.0)
    }

    pub fn shift(&self, z: Complex64) -> Self {
        self.add(&CMatrix::identity(self.n()).scale(z))
    }
}

/// Real pairing `Re tr(ρa)`.
pub fn pairing(a: &CMatrix, rho: &CMatrix) -> f64 {
    (&rho.0 * &a.0).trace().re
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n();
        let mut seq = s.serialize_seq(Some(n))?;
        for i in 0..n {
            let row: Vec<[f64; 2]> = (0..n).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        let m = CMatrix(DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])));
        if !m.is_finite() {
            return Err(serde::de::Error::custom("matrix entries must be finite"));
        }
        Ok(m)
    }
}

/// Self-adjoint functional `a ↦ tr(ρa)` with hermitian `ρ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermFunctional {
    pub rho: CMatrix,
}

impl HermFunctional {
    pub fn new(rho: CMatrix, tol: f64) -> Result<Self> {
        let defect = rho.hermitian_defect();
        if !rho.is_finite() || defect > tol * rho.0.norm().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(HermFunctional { rho: rho.real_part() })
    }

    pub fn n(&self) -> usize {
        self.rho.n()
    }

    pub fn norm(&self) -> f64 {
        self.rho.trace_norm()
    }

    pub fn apply(&self, a: &CMatrix) -> Complex64 {
        (&self.rho.0 * &a.0).trace()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanDecomposition {
    pub plus: HermFunctional,
    pub minus: HermFunctional,
    pub norm: f64,
    pub norm_plus: f64,
    pub norm_minus: f64,
    /// Smallest eigenvalue over both parts.
    pub min_eigenvalue: f64,
    /// Operator norm of `ρ₊ρ₋`.
    pub support_overlap: f64,
    /// Operator norm of `ρ − (ρ₊ − ρ₋)`.
    pub reconstruction_error: f64,
    /// `|‖φ‖ − ‖φ₊‖ − ‖φ₋‖| / max(‖φ‖, 1)`.
    pub additivity_error: f64,
}

impl JordanDecomposition {
    pub fn holds(&self, tol: f64) -> bool {
        let scale = self.norm.max(1.0);
        self.min_eigenvalue >= -tol * scale
            && self.support_overlap <= tol * scale * scale
            && self.reconstruction_error <= tol * scale
            && self.additivity_error <= tol
    }
}

/// Spectral split of a hermitian density into positive parts with
/// orthogonal supports.
pub fn jordan_decompose(phi: &HermFunctional) -> JordanDecomposition {
    let n = phi.n();
    let eig = phi.rho.0.clone().symmetric_eigen();
    let part = |keep: &dyn Fn(f64) -> f64| {
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(keep(eig.eigenvalues[i]), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        CMatrix(&eig.eigenvectors * d * eig.eigenvectors.adjoint()).real_part()
    };
    let plus = part(&|l| l.max(0.0));
    let minus = part(&|l| (-l).max(0.0));
    let min_eigenvalue = plus
        .hermitian_eigenvalues()
        .into_iter()
        .chain(minus.hermitian_eigenvalues())
        .fold(f64::INFINITY, f64::min);
    let norm = phi.norm();
    let (norm_plus, norm_minus) = (plus.trace_norm(), minus.trace_norm());
    JordanDecomposition {
        support_overlap: plus.mul(&minus).operator_norm(),
        reconstruction_error: phi.rho.sub(&plus.sub(&minus)).operator_norm(),
        additivity_error: (norm - norm_plus - norm_minus).abs() / norm.max(1.0),
        min_eigenvalue,
        norm,
        norm_plus,
        norm_minus,
        plus: HermFunctional { rho: plus },
        minus: HermFunctional { rho: minus },
    }
}

fn gaussian_matrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix(DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    }))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    let s: f64 = Exp1.sample(rng);
    gaussian_matrix(rng, n).scale(Complex64::new(s, 0.0))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    random_matrix(rng, n).real_part()
}

/// `q*q` for complex Gaussian `q`; low rank or zero with some probability
/// so that boundary cases are reached.
pub fn random_psd(rng: &mut impl Rng, n: usize) -> CMatrix {
    if rng.random_bool(0.1) {
        return CMatrix::zeros(n);
    }
    let mut q = random_matrix(rng, n);
    if rng.random_bool(0.3) {
        let keep = rng.random_range(0..n);
        for i in 0..n {
            if i != keep {
                q.0.row_mut(i).fill(Complex64::new(0.0, 0.0));
            }
        }
    }
    q.adjoint().mul(&q)
}

/// `exp(iH)` for a random hermitian `H`.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    unitary_exp(&random_hermitian(rng, n))
}

fn unitary_exp(h: &CMatrix) -> CMatrix {
    let n = h.n();
    let eig = h.0.clone().symmetric_eigen();
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (I * eig.eigenvalues[i]).exp()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    CMatrix(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

/// Sampled lower bound for `sup{|tr(ρa)| : ‖a‖ ≤ 1}` over random unitaries
/// and perturbations of the polar factor of `ρ`.
pub fn sampled_functional_norm(rng: &mut impl Rng, rho: &CMatrix, samples: usize) -> f64 {
    let n = rho.n();
    let svd = rho.0.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let polar = CMatrix(vt.adjoint() * u.adjoint());
    let eval = |a: &CMatrix| (&rho.0 * &a.0).trace().norm();
    let mut best = eval(&polar.mul(&unitary_exp(&random_hermitian(rng, n).scale(Complex64::new(0.05, 0.0)))));
    for _ in 0..samples {
        best = best.max(eval(&random_unitary(rng, n)));
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub item: u8,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Largest relative excess of the left side over the right side, or of
    /// the pairing over 0; `≤ 0` means no violation.
    pub max_violation: f64,
    /// Largest observed ratio of left to right side, where meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    pub violations: usize,
    pub worst_case_inputs: Vec<CMatrix>,
    /// Polar items only: the same samples against the formula with the
    /// opposite sign on the `i`-rotated cone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opposite_sign_max_violation: Option<f64>,
    pub ok: bool,
}

struct Tracker {
    max_violation: f64,
    max_ratio: f64,
    violations: usize,
    worst: Vec<CMatrix>,
    tol: f64,
}

impl Tracker {
    fn new(tol: f64) -> Self {
        Tracker {
            max_violation: f64::NEG_INFINITY,
            max_ratio: 0.0,
            violations: 0,
            worst: Vec::new(),
            tol,
        }
    }

    /// Records `lhs ≤ rhs` with relative slack.
    fn record(&mut self, lhs: f64, rhs: f64, inputs: impl FnOnce() -> Vec<CMatrix>) {
        let v = (lhs - rhs) / rhs.abs().max(f64::MIN_POSITIVE);
        let v = if lhs <= rhs { v.min(0.0) } else { v };
        if rhs > 0.0 {
            self.max_ratio = self.max_ratio.max(lhs / rhs);
        }
        if v > self.tol {
            self.violations += 1;
        }
        if v > self.max_violation {
            self.max_violation = v;
            self.worst = inputs();
        }
    }

    /// Records an already normalised quantity that must be `≤ 0`.
    fn record_value(&mut self, v: f64, inputs: impl FnOnce() -> Vec<CMatrix>) {
        if v > self.tol {
            self.violations += 1;
        }
        if v > self.max_violation {
            self.max_violation = v;
            self.worst = inputs();
        }
    }

    fn report(self, item: u8, n: usize, samples: usize, seed: u64, ratio: bool) -> SampleReport {
        SampleReport {
            item,
            n,
            samples,
            seed,
            tol: self.tol,
            max_violation: if samples == 0 { 0.0 } else { self.max_violation },
            max_ratio: ratio.then_some(self.max_ratio),
            ok: self.violations == 0,
            violations: self.violations,
            worst_case_inputs: self.worst,
            opposite_sign_max_violation: None,
        }
    }
}

fn check_item(item: u8, lo: u8, hi: u8) -> Result<()> {
    if (lo..=hi).contains(&item) {
        Ok(())
    } else {
        Err(Error::InvalidInstance(format!("item must be in {lo}..={hi}, got {item}")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=16).contains(&n) {
        Ok(())
    } else {
        Err(Error::TooLarge(format!("matrix size must be in 1..=16, got {n}")))
    }
}

/// Polar formulas for the four cones `A₊`, `iA₊`, `A₊′`, `iA₊′`:
///
/// 1. `A₊° = −A₊′ + i·A′_h`
/// 2. `(iA₊)° = iA₊′ + A′_h`
/// 3. `(A₊′)° = −A₊ + i·A_h`
/// 4. `(iA₊′)° = iA₊ + A_h`
///
/// Each sample draws `z` from the right-hand set and `c` from the cone and
/// checks `Re⟨c, z⟩ ≤ 0`. It also draws an arbitrary member of the polar
/// (by shifting a random matrix) and checks that the split
/// `z = ½(z + z*) + i·(2i)⁻¹(z − z*)` lands in the right-hand set.
///
/// Items 1/3 and 2/4 coincide as matrix computations since the pairing
/// `Re tr(ρa)` is symmetric; they differ in which side is the algebra.
pub fn check_cone_polars(item: u8, n: usize, samples: usize, seed: u64, tol: f64) -> Result<SampleReport> {
    check_item(item, 1, 4)?;
    check_n(n)?;
    let rotated = item.is_multiple_of(2);
    let mut rng = random::rng(seed ^ (u64::from(item) << 32) ^ n as u64);
    let mut t = Tracker::new(tol);
    let mut opposite = f64::NEG_INFINITY;
    for _ in 0..samples {
        let p = random_psd(&mut rng, n);
        let h = random_hermitian(&mut rng, n);
        let c0 = random_psd(&mut rng, n);
        let (z, c) = if rotated {
            (p.scale(I).add(&h), c0.scale(I))
        } else {
            (p.scale(-Complex64::new(1.0, 0.0)).add(&h.scale(I)), c0.clone())
        };
        let scale = z.0.norm() * c.0.norm();
        let val = pairing(&c, &z) / scale.max(1.0);
        t.record_value(val, || vec![z.clone(), c.clone()]);
        if rotated {
            let literal = p.scale(-I).add(&h);
            opposite = opposite.max(pairing(&c, &literal) / scale.max(f64::MIN_POSITIVE));
        }

        // converse: a generic polar member splits as claimed
        let raw = random_matrix(&mut rng, n);
        let member = if rotated {
            // Re⟨ip, z⟩ = −tr(p·im z) ≤ 0 for all p ≥ 0 iff im z ≥ 0
            let lo = raw.imag_part().hermitian_eigenvalues()[0];
            raw.shift(I * (-lo).max(0.0))
        } else {
            let hi = *raw.real_part().hermitian_eigenvalues().last().expect("n >= 1");
            raw.shift(Complex64::new(-hi.max(0.0), 0.0))
        };
        for c in [&c0, &random_psd(&mut rng, n)] {
            let c = if rotated { c.scale(I) } else { c.clone() };
            let s = member.0.norm() * c.0.norm();
            let v = pairing(&c, &member) / s.max(1.0);
            t.record_value(v, || vec![member.clone(), c.clone()]);
        }
        let (re, im) = (member.real_part(), member.imag_part());
        let recon = member.sub(&re.add(&im.scale(I))).0.norm() / member.0.norm().max(1.0);
        t.record_value(recon, || vec![member.clone()]);
        // the cone part: −re ≥ 0 for items 1/3, im ≥ 0 for items 2/4
        let cone_part = if rotated { im } else { re.scale(-Complex64::new(1.0, 0.0)) };
        let lo = cone_part.hermitian_eigenvalues()[0];
        t.record_value(-lo / member.0.norm().max(1.0), || vec![member.clone()]);
    }
    let mut r = t.report(item, n, samples, seed, false);
    if rotated {
        r.opposite_sign_max_violation = Some(if samples == 0 { 0.0 } else { opposite });
    }
    Ok(r)
}

/// Sampled norm inequalities for order intervals in `M_n` (items 1–4,
/// operator norm) and in its dual (items 5–8, trace norm):
///
/// 1/5. `a ∈ (b₁ + K + iH) ∩ (b₂ − K + iH) ∩ (b₃ + iK + H) ∩ (b₄ − iK + H)`
///      gives `‖a‖ ≤ max(‖b₁‖,‖b₂‖) + max(‖b₃‖,‖b₄‖)`, resp. `‖φ‖ ≤ Σ‖φⱼ‖`
/// 2/6. the same without the hermitian slack
/// 3/7. `a ≤ b ≤ c` gives `‖b‖ ≤ 2 max(‖a‖,‖c‖)`, resp. `‖φ‖ ≤ 2(‖ρ‖ + ‖ψ‖)`
/// 4/8. as 3/7 for hermitian endpoints, without the factor 2
///
/// Here `K` is the positive cone and `H` the hermitian matrices. Hypothesis
/// points are built constructively by adding sampled increments.
pub fn check_order_inequality(item: u8, n: usize, samples: usize, seed: u64, tol: f64) -> Result<SampleReport> {
    check_item(item, 1, 8)?;
    check_n(n)?;
    let functional = item >= 5;
    let norm = |m: &CMatrix| if functional { m.trace_norm() } else { m.operator_norm() };
    let mut rng = random::rng(seed ^ (u64::from(item) << 32) ^ n as u64);
    let mut t = Tracker::new(tol);
    for _ in 0..samples {
        match (item - 1) % 4 {
            0 | 1 => {
                let slack = (item - 1).is_multiple_of(4);
                let a = random_matrix(&mut rng, n);
                let mut h = || {
                    if slack {
                        random_hermitian(&mut rng, n)
                    } else {
                        CMatrix::zeros(n)
                    }
                };
                let hs = [h(), h(), h(), h()];
                let ps: Vec<CMatrix> = (0..4).map(|_| random_psd(&mut rng, n)).collect();
                // a = b₁ + p₁ + i h₁ = b₂ − p₂ + i h₂ = b₃ + i p₃ + h₃ = b₄ − i p₄ + h₄
                let b1 = a.sub(&ps[0]).sub(&hs[0].scale(I));
                let b2 = a.add(&ps[1]).sub(&hs[1].scale(I));
                let b3 = a.sub(&ps[2].scale(I)).sub(&hs[2]);
                let b4 = a.add(&ps[3].scale(I)).sub(&hs[3]);
                let lhs = norm(&a);
                let rhs = if functional {
                    norm(&b1) + norm(&b2) + norm(&b3) + norm(&b4)
                } else {
                    norm(&b1).max(norm(&b2)) + norm(&b3).max(norm(&b4))
                };
                t.record(lhs, rhs, || vec![a.clone(), b1.clone(), b2.clone(), b3.clone(), b4.clone()]);
            }
            _ => {
                let hermitian = (item - 1) % 4 == 3;
                let a = if hermitian {
                    random_hermitian(&mut rng, n)
                } else {
                    random_matrix(&mut rng, n)
                };
                let b = a.add(&random_psd(&mut rng, n));
                let c = b.add(&random_psd(&mut rng, n));
                let lhs = norm(&b);
                let rhs = match (functional, hermitian) {
                    (false, false) => 2.0 * norm(&a).max(norm(&c)),
                    (false, true) => norm(&a).max(norm(&c)),
                    (true, false) => 2.0 * (norm(&a) + norm(&c)),
                    (true, true) => norm(&a) + norm(&c),
                };
                t.record(lhs, rhs, || vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    Ok(t.report(item, n, samples, seed, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_jordan_split() {
        let phi = HermFunctional::new(CMatrix::diag(&[1.0, -1.0]), IDENTITY_TOL).unwrap();
        let j = jordan_decompose(&phi);
        assert!(j.plus.rho.sub(&CMatrix::diag(&[1.0, 0.0])).0.norm() < 1e-12);
        assert!(j.minus.rho.sub(&CMatrix::diag(&[0.0, 1.0])).0.norm() < 1e-12);
        assert!((j.norm - 2.0).abs() < 1e-12);
        assert!((j.norm_plus + j.norm_minus - 2.0).abs() < 1e-12);
        let zero = jordan_decompose(&HermFunctional::new(CMatrix::zeros(3), IDENTITY_TOL).unwrap());
        assert_eq!(zero.norm_plus + zero.norm_minus, 0.0);
        assert!(zero.holds(IDENTITY_TOL));
    }

    #[test]
    fn jordan_on_random_functionals() {
        let mut rng = random::rng(5);
        for n in 1..=6 {
            for _ in 0..30 {
                let phi = HermFunctional::new(random_hermitian(&mut rng, n), IDENTITY_TOL).unwrap();
                let j = jordan_decompose(&phi);
                assert!(j.holds(IDENTITY_TOL), "{j:?}");
                // oracle: trace norm is the sum of absolute eigenvalues
                let abs: f64 = phi.rho.hermitian_eigenvalues().iter().map(|l| l.abs()).sum();
                assert!((abs - j.norm).abs() <= 1e-10 * abs.max(1.0));
            }
        }
    }

    #[test]
    fn non_hermitian_density_is_rejected() {
        let mut m = CMatrix::zeros(2);
        m.0[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(HermFunctional::new(m, IDENTITY_TOL), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn polar_formulas() {
        for item in 1..=4 {
            for n in [2, 3] {
                let r = check_cone_polars(item, n, 2000, 1, INEQUALITY_TOL).unwrap();
                assert!(r.ok, "{r:?}");
                if item % 2 == 0 {
                    // the opposite sign fails visibly
                    assert!(r.opposite_sign_max_violation.unwrap() > 0.01, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn zero_functional_is_in_every_polar() {
        let mut rng = random::rng(2);
        for _ in 0..10 {
            let c = random_psd(&mut rng, 3);
            assert_eq!(pairing(&c, &CMatrix::zeros(3)), 0.0);
            assert_eq!(pairing(&c.scale(I), &CMatrix::zeros(3)), 0.0);
        }
    }

    #[test]
    fn negative_squares_pair_nonpositively_with_states() {
        let mut rng = random::rng(3);
        for _ in 0..100 {
            let q = random_matrix(&mut rng, 3);
            let a = q.adjoint().mul(&q).scale(-Complex64::new(1.0, 0.0));
            let phi = random_psd(&mut rng, 3);
            assert!(pairing(&a, &phi) <= 1e-12 * a.0.norm() * phi.0.norm());
        }
    }

    #[test]
    fn boundary_order_interval() {
        let a = CMatrix::diag(&[0.0, 0.0]);
        let b = CMatrix::diag(&[1.0, 0.0]);
        let c = CMatrix::diag(&[1.0, 1.0]);
        assert!((b.operator_norm() - 1.0).abs() < 1e-15);
        assert!(b.operator_norm() <= a.operator_norm().max(c.operator_norm()));
        let rho = CMatrix::diag(&[-1.0, 0.0]);
        let psi = CMatrix::diag(&[0.0, 1.0]);
        assert!(CMatrix::zeros(2).trace_norm() <= rho.trace_norm() + psi.trace_norm());
        assert!((rho.trace_norm() + psi.trace_norm() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn order_interval_inequalities() {
        for item in 1..=8 {
            for n in [2, 3] {
                let r = check_order_inequality(item, n, 1000, 9, INEQUALITY_TOL).unwrap();
                assert!(r.ok, "{r:?}");
                assert_eq!(r.violations, 0);
            }
        }
        assert!(check_order_inequality(9, 2, 1, 0, INEQUALITY_TOL).is_err());
    }

    #[test]
    fn trace_norm_is_the_functional_norm() {
        let mut rng = random::rng(4);
        for n in 1..=4 {
            for _ in 0..10 {
                let rho = random_matrix(&mut rng, n);
                let exact = rho.trace_norm();
                let sampled = sampled_functional_norm(&mut rng, &rho, 50);
                assert!(sampled <= exact * (1.0 + 1e-12));
                assert!(sampled >= 0.98 * exact, "{sampled} vs {exact}");
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = check_order_inequality(4, 2, 10, 0, INEQUALITY_TOL).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["item", "n", "samples", "max_violation", "worst_case_inputs"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let m: CMatrix = serde_json::from_value(serde_json::json!([[[1.0, 0.0], [0.0, 1.0]], [[0.0, -1.0], [2.0, 0.0]]])).unwrap();
        assert_eq!(m.0[(1, 0)], Complex64::new(0.0, -1.0));
    }
}
