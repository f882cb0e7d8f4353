//! Fourier analysis on finite Abelian groups.
//!
//! Conventions, fixed crate-wide:
//!
//! * Groups carry Haar **probability** measure: `||f||_p^p = (1/|G|) sum |f|^p`.
//! * Duals carry **counting** measure, and a dual element `a` pairs with `x`
//!   through the character `x -> exp(2 pi i sum_j a_j x_j / n_j)`.
//! * `dft` divides by `|G|`, `idft` does not, so `idft . dft = id` and
//!   Parseval reads `sum |f^(a)|^2 = ||f||_2^2` with constant 1.
//!
//! The transform is a tensor product of per-factor cyclic transforms: naive
//! `O(n^2)` per factor (desk-scale moduli), with a radix-2 butterfly pass for
//! modulus-2 factors, so 2-groups get a genuine fast Walsh-Hadamard transform.
//!
//! Rademacher indexing is 0-based throughout: `r_j` reads the `(j+1)`-st
//! binary digit of a dyadic point, most significant first.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::abelian::{gcd, lcm, GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// Largest group order for which dense function storage is permitted.
pub const FUNCTION_ORDER_CAP: u64 = 1 << 26;

/// A complex-valued function on a finite Abelian group, stored densely and
/// indexed by the canonical mixed-radix index.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: GroupSpec,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: GroupSpec, values: Vec<Complex64>) -> Result<GroupFunction> {
        check_dense(&group)?;
        if values.len() as u64 != group.order() {
            return Err(Error::ShapeMismatch {
                context: "function value count".into(),
            });
        }
        Ok(GroupFunction { group, values })
    }

    pub fn from_fn(group: GroupSpec, mut f: impl FnMut(&GroupElement) -> Complex64) -> Result<GroupFunction> {
        check_dense(&group)?;
        let values = (0..group.order()).map(|i| f(&group.element_at(i))).collect();
        Ok(GroupFunction { group, values })
    }

    pub fn zero(group: GroupSpec) -> Result<GroupFunction> {
        check_dense(&group)?;
        let n = group.order() as usize;
        Ok(GroupFunction {
            group,
            values: vec![Complex64::ZERO; n],
        })
    }

    /// The point mass at `y` scaled by `mass` (so `mass = |G|` gives the
    /// function of unit `L_1` norm concentrated at `y`).
    pub fn point_mass(group: GroupSpec, y: &GroupElement, mass: Complex64) -> Result<GroupFunction> {
        let mut f = GroupFunction::zero(group)?;
        if !f.group.contains(y) {
            return Err(Error::ShapeMismatch {
                context: "point mass location".into(),
            });
        }
        let idx = f.group.index_of(y) as usize;
        f.values[idx] = mass;
        Ok(f)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, x: &GroupElement) -> Complex64 {
        self.values[self.group.index_of(x) as usize]
    }

    /// Haar-probability `L_p` norm; `p = f64::INFINITY` gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_of_values(&self.values, p)
    }

    /// The translate `x -> f(x + z)`.
    pub fn translate(&self, z: &GroupElement) -> Result<GroupFunction> {
        if !self.group.contains(z) {
            return Err(Error::ShapeMismatch {
                context: "translate".into(),
            });
        }
        GroupFunction::from_fn(self.group.clone(), |x| {
            self.value_at(&self.group.add(x, z).expect("validated"))
        })
    }

    /// The reflection `x -> f(-x)`.
    pub fn reflect(&self) -> GroupFunction {
        GroupFunction::from_fn(self.group.clone(), |x| {
            self.value_at(&self.group.neg(x).expect("validated"))
        })
        .expect("same group")
    }
}

fn check_dense(group: &GroupSpec) -> Result<()> {
    if group.order() > FUNCTION_ORDER_CAP {
        return Err(Error::FunctionTooLarge(group.order(), FUNCTION_ORDER_CAP));
    }
    Ok(())
}

fn lp_of_values(values: &[Complex64], p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let n = values.len() as f64;
    let mean = if p == 1.0 {
        values.iter().map(|v| v.norm()).sum::<f64>() / n
    } else if p == 2.0 {
        values.iter().map(|v| v.norm_sqr()).sum::<f64>() / n
    } else {
        values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / n
    };
    Ok(if p == 1.0 { mean } else { mean.powf(1.0 / p) })
}

/// Fourier coefficients of a function, indexed by dual elements (counting
/// measure side).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    group: GroupSpec,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(group: GroupSpec, coeffs: Vec<Complex64>) -> Result<Spectrum> {
        check_dense(&group)?;
        if coeffs.len() as u64 != group.order() {
            return Err(Error::ShapeMismatch {
                context: "spectrum coefficient count".into(),
            });
        }
        Ok(Spectrum { group, coeffs })
    }

    pub fn zero(group: GroupSpec) -> Result<Spectrum> {
        check_dense(&group)?;
        let n = group.order() as usize;
        Ok(Spectrum {
            group,
            coeffs: vec![Complex64::ZERO; n],
        })
    }

    /// Spectrum equal to 1 on the given dual elements and 0 elsewhere.
    pub fn indicator(group: GroupSpec, support: &BTreeSet<GroupElement>) -> Result<Spectrum> {
        let mut s = Spectrum::zero(group)?;
        for a in support {
            if !s.group.contains(a) {
                return Err(Error::ShapeMismatch {
                    context: "indicator support".into(),
                });
            }
            let idx = s.group.index_of(a) as usize;
            s.coeffs[idx] = Complex64::ONE;
        }
        Ok(s)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff_at(&self, a: &GroupElement) -> Complex64 {
        self.coeffs[self.group.index_of(a) as usize]
    }

    pub fn set_coeff(&mut self, a: &GroupElement, c: Complex64) {
        let idx = self.group.index_of(a) as usize;
        self.coeffs[idx] = c;
    }

    /// `sum |f^(a)|^2`; equals `||f||_2^2` by Parseval.
    pub fn energy_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient modulus outside `support`.
    pub fn max_outside(&self, support: &CharSet) -> f64 {
        let mut inside = vec![false; self.coeffs.len()];
        for a in support.members() {
            inside[self.group.index_of(a) as usize] = true;
        }
        self.coeffs
            .iter()
            .zip(&inside)
            .filter(|(_, &keep)| !keep)
            .map(|(c, _)| c.norm())
            .fold(0.0, f64::max)
    }
}

/// A finite set of dual elements (characters), deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSet {
    dual: GroupSpec,
    members: BTreeSet<GroupElement>,
}

impl CharSet {
    pub fn new(dual: GroupSpec, members: impl IntoIterator<Item = GroupElement>) -> Result<CharSet> {
        let members: BTreeSet<GroupElement> = members.into_iter().collect();
        for a in &members {
            if !dual.contains(a) {
                return Err(Error::ShapeMismatch {
                    context: "character set member".into(),
                });
            }
        }
        Ok(CharSet { dual, members })
    }

    /// The full dual group.
    pub fn full(dual: GroupSpec) -> Result<CharSet> {
        check_dense(&dual)?;
        let members = dual.elements().collect();
        Ok(CharSet { dual, members })
    }

    pub fn dual(&self) -> &GroupSpec {
        &self.dual
    }

    pub fn members(&self) -> &BTreeSet<GroupElement> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.members.contains(a)
    }
}

/// Evaluates the character indexed by dual element `a` at `x`:
/// `exp(2 pi i sum_j a_j x_j / n_j)`, always of unit modulus.
///
/// The phase is reduced as an exact rational first, so characters of
/// 2-groups come out as exact `+-1` and 4-torsion phases as exact `+-i`.
pub fn char_eval(g: &GroupSpec, a: &GroupElement, x: &GroupElement) -> Result<Complex64> {
    if !g.contains(a) || !g.contains(x) {
        return Err(Error::ShapeMismatch {
            context: format!("char_eval on {:?}", g.orders()),
        });
    }
    let den: u64 = g.orders().iter().fold(1, |acc, &n| lcm(acc, n));
    let mut num: u64 = 0;
    for ((&aj, &xj), &nj) in a.residues().iter().zip(x.residues()).zip(g.orders()) {
        let term = (aj as u128 * xj as u128 % nj as u128) as u64;
        num = (num + term * (den / nj)) % den;
    }
    Ok(unit_phase(num, den))
}

/// `exp(2 pi i num / den)` with exact values on the 4-torsion phases.
fn unit_phase(num: u64, den: u64) -> Complex64 {
    let g = gcd(num, den);
    let (num, den) = (num / g, den / g);
    match (den, num) {
        (1, _) => Complex64::new(1.0, 0.0),
        (2, _) => Complex64::new(-1.0, 0.0),
        (4, 1) => Complex64::new(0.0, 1.0),
        (4, 3) => Complex64::new(0.0, -1.0),
        _ => {
            let (sin, cos) = (TAU * num as f64 / den as f64).sin_cos();
            Complex64::new(cos, sin)
        }
    }
}

/// In-place tensor transform over the factors of `spec`.
///
/// `forward` uses the conjugated kernel `exp(-2 pi i r t / n)` (the final
/// `1/|G|` division is the caller's), the inverse uses the plain kernel.
/// Modulus-2 factors reduce to butterflies in either direction.
fn tensor_transform(values: &mut [Complex64], spec: &GroupSpec, forward: bool) {
    let orders = spec.orders();
    let len = values.len();
    let mut stride = len; // stride of the current axis's digit
    for &n in orders {
        let n = n as usize;
        stride /= n;
        if n == 2 {
            butterfly_pass(values, stride);
        } else {
            cyclic_pass(values, n, stride, forward);
        }
    }
}

fn butterfly_pass(values: &mut [Complex64], stride: usize) {
    let block = 2 * stride;
    let mut base = 0;
    while base < values.len() {
        for off in base..base + stride {
            let a = values[off];
            let b = values[off + stride];
            values[off] = a + b;
            values[off + stride] = a - b;
        }
        base += block;
    }
}

fn cyclic_pass(values: &mut [Complex64], n: usize, stride: usize, forward: bool) {
    // twiddle table w^k for k in 0..n, with w = exp(-+ 2 pi i / n)
    let sign = if forward { -1.0 } else { 1.0 };
    let table: Vec<Complex64> = (0..n)
        .map(|k| {
            let (sin, cos) = (sign * TAU * k as f64 / n as f64).sin_cos();
            Complex64::new(cos, sin)
        })
        .collect();
    let mut scratch = vec![Complex64::ZERO; n];
    let block = n * stride;
    let mut base = 0;
    while base < values.len() {
        for off in base..base + stride {
            for (r, slot) in scratch.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for t in 0..n {
                    acc += values[off + t * stride] * table[r * t % n];
                }
                *slot = acc;
            }
            for (t, &v) in scratch.iter().enumerate() {
                values[off + t * stride] = v;
            }
        }
        base += block;
    }
}

/// Fourier coefficients `f^(a) = (1/|G|) sum_x f(x) conj(chi_a(x))`.
pub fn dft(f: &GroupFunction) -> Spectrum {
    let mut coeffs = f.values.clone();
    tensor_transform(&mut coeffs, &f.group, true);
    let scale = 1.0 / f.group.order() as f64;
    for c in &mut coeffs {
        *c *= scale;
    }
    Spectrum {
        group: f.group.clone(),
        coeffs,
    }
}

/// Inverse transform `f(x) = sum_a f^(a) chi_a(x)`; exact inverse of [`dft`].
pub fn idft(s: &Spectrum) -> GroupFunction {
    let mut values = s.coeffs.clone();
    tensor_transform(&mut values, &s.group, false);
    GroupFunction {
        group: s.group.clone(),
        values,
    }
}

/// Spectral projection onto `support`: keeps the coefficients on the set and
/// resynthesizes. Idempotent, and an `L_2` contraction.
pub fn project(f: &GroupFunction, support: &CharSet) -> Result<GroupFunction> {
    if support.dual() != f.group() {
        return Err(Error::ShapeMismatch {
            context: "projection support lives on a different dual".into(),
        });
    }
    let spec = dft(f);
    let mut kept = Spectrum::zero(f.group.clone())?;
    for a in support.members() {
        kept.set_coeff(a, spec.coeff_at(a));
    }
    Ok(idft(&kept))
}

/// The kernel `D(x) = sum_{a in support} chi_a(x)`; `D(0) = |support|` is its
/// sup norm, and convolution with it realizes the projection.
pub fn dirichlet_kernel(g: &GroupSpec, support: &CharSet) -> Result<GroupFunction> {
    if support.is_empty() {
        return Err(Error::EmptyCharSet);
    }
    if support.dual() != g {
        return Err(Error::ShapeMismatch {
            context: "kernel support lives on a different dual".into(),
        });
    }
    let ind = Spectrum::indicator(g.clone(), support.members())?;
    Ok(idft(&ind))
}

/// The `L_1 -> L_1` norm of the spectral projection onto `support`.
///
/// On a finite group the projection is convolution with the Dirichlet kernel,
/// and the `L_1 -> L_1` norm of convolution by a fixed kernel equals the
/// kernel's `L_1` norm: the extreme points of the `L_1` ball are unimodular
/// multiples of normalized point masses, which convolution sends to
/// translates of the kernel.
pub fn projection_norm_1to1(g: &GroupSpec, support: &CharSet) -> Result<f64> {
    dirichlet_kernel(g, support)?.lp_norm(1.0)
}

/// The Fourier-algebra norm of the indicator of `points` on the dual of
/// `prod`: builds `phi(u) = sum_{p in points} chi_p(-u)` and returns its
/// `L_1` norm. Empty input gives 0.
pub fn algebra_norm_indicator(prod: &GroupSpec, points: &BTreeSet<GroupElement>) -> Result<f64> {
    if points.is_empty() {
        return Ok(0.0);
    }
    let ind = Spectrum::indicator(prod.clone(), points)?;
    idft(&ind).reflect().lp_norm(1.0)
}

/// Convolution with respect to Haar probability measure:
/// `(f * g)(x) = (1/|G|) sum_y f(y) g(x - y)`.
///
/// Direct `O(|G|^2)` evaluation; under [`dft`] it becomes a pointwise product.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if f.group != g.group {
        return Err(Error::ShapeMismatch {
            context: "convolution operands".into(),
        });
    }
    let spec = &f.group;
    let scale = 1.0 / spec.order() as f64;
    GroupFunction::from_fn(spec.clone(), |x| {
        let mut acc = Complex64::ZERO;
        for (i, &fv) in f.values.iter().enumerate() {
            let y = spec.element_at(i as u64);
            let diff = spec.sub(x, &y).expect("validated");
            acc += fv * g.value_at(&diff);
        }
        acc * scale
    })
}

/// Samples the Walsh function with Rademacher index set `j_set` (0-based,
/// each index below `level`) at the `2^level` dyadic points `t / 2^level`.
///
/// `r_j` is +1 exactly when the `(j+1)`-st binary digit of the point (most
/// significant first) is 0, so the sample vector is the character of
/// `(Z/2)^level` indexed by the indicator vector of `j_set`.
pub fn sample_walsh(level: usize, j_set: &BTreeSet<usize>) -> Result<GroupFunction> {
    if let Some(&bad) = j_set.iter().find(|&&j| j >= level) {
        return Err(Error::Degenerate(format!(
            "Rademacher index {bad} out of range for level {level}"
        )));
    }
    let group = GroupSpec::new(&vec![2u64; level])?;
    let values = (0..1u64 << level)
        .map(|t| {
            let mut parity = 0u32;
            for &j in j_set {
                // bit j+1 of t, most significant first
                parity ^= (t >> (level - 1 - j)) as u32 & 1;
            }
            Complex64::new(if parity == 0 { 1.0 } else { -1.0 }, 0.0)
        })
        .collect();
    GroupFunction::new(group, values)
}

/// Samples the trigonometric function of frequency `z` at the points `t / n`:
/// exactly the character of `Z/n` indexed by `z mod n`.
pub fn sample_trig(n: u64, z: i64) -> Result<GroupFunction> {
    if n == 0 {
        return Err(Error::Degenerate("zero modulus".into()));
    }
    let group = GroupSpec::new(&[n])?;
    let freq = group.element(&[z.rem_euclid(n as i64) as u64])?;
    GroupFunction::from_fn(group.clone(), |x| {
        char_eval(&group, &freq, x).expect("validated")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const TIGHT: f64 = 1e-12;

    fn random_function(g: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupFunction {
        GroupFunction::from_fn(g.clone(), |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
        .unwrap()
    }

    /// Direct O(|G|^2) transform straight from the definition; the oracle for
    /// the tensor-decomposed path.
    fn naive_dft(f: &GroupFunction) -> Spectrum {
        let g = f.group().clone();
        let coeffs = (0..g.order())
            .map(|ai| {
                let a = g.element_at(ai);
                let mut acc = Complex64::ZERO;
                for (xi, &v) in f.values().iter().enumerate() {
                    let x = g.element_at(xi as u64);
                    acc += v * char_eval(&g, &a, &x).unwrap().conj();
                }
                acc / g.order() as f64
            })
            .collect();
        Spectrum::new(g, coeffs).unwrap()
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn char_eval_examples() {
        let z4 = GroupSpec::new(&[4]).unwrap();
        let i = char_eval(&z4, &z4.element(&[1]).unwrap(), &z4.element(&[1]).unwrap()).unwrap();
        assert_eq!(i, Complex64::new(0.0, 1.0));

        let g = GroupSpec::new(&[6, 5]).unwrap();
        for x in g.elements() {
            assert_eq!(char_eval(&g, &g.zero(), &x).unwrap(), Complex64::ONE);
        }

        let v = GroupSpec::new(&[2, 2]).unwrap();
        let a = v.element(&[1, 1]).unwrap();
        assert_eq!(char_eval(&v, &a, &a).unwrap(), Complex64::ONE);
    }

    #[test]
    fn characters_have_unit_modulus_and_multiply() {
        let g = GroupSpec::new(&[12, 7]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = g.element_at(rng.random_range(0..g.order()));
            let x = g.element_at(rng.random_range(0..g.order()));
            let y = g.element_at(rng.random_range(0..g.order()));
            let cx = char_eval(&g, &a, &x).unwrap();
            assert!((cx.norm() - 1.0).abs() < TIGHT);
            let cxy = char_eval(&g, &a, &g.add(&x, &y).unwrap()).unwrap();
            assert!((cxy - cx * char_eval(&g, &a, &y).unwrap()).norm() < TIGHT);
        }
    }

    #[test]
    fn dft_of_character_is_indicator() {
        let g = GroupSpec::new(&[3, 4]).unwrap();
        let a = g.element(&[2, 1]).unwrap();
        let f = GroupFunction::from_fn(g.clone(), |x| char_eval(&g, &a, x).unwrap()).unwrap();
        let spec = dft(&f);
        for (i, c) in spec.coeffs().iter().enumerate() {
            let expected = if g.element_at(i as u64) == a { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expected, 0.0)).norm() < TIGHT);
        }
    }

    #[test]
    fn dft_of_point_mass_is_flat() {
        let g = GroupSpec::new(&[2, 3, 2]).unwrap();
        let f = GroupFunction::point_mass(
            g.clone(),
            &g.zero(),
            Complex64::new(g.order() as f64, 0.0),
        )
        .unwrap();
        let spec = dft(&f);
        assert!(spec.coeffs().iter().all(|c| (c - Complex64::ONE).norm() < TIGHT));
    }

    #[test]
    fn roundtrip_and_parseval_on_mixed_group() {
        let g = GroupSpec::new(&[6, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_function(&g, &mut rng);
            let spec = dft(&f);
            assert!(max_diff(idft(&spec).values(), f.values()) < TIGHT);
            let l2sq = f.lp_norm(2.0).unwrap().powi(2);
            assert!((spec.energy_sum() - l2sq).abs() <= TIGHT * l2sq.max(1.0));
            // against the direct-definition oracle
            assert!(max_diff(spec.coeffs(), naive_dft(&f).coeffs()) < TIGHT);
        }
    }

    #[test]
    fn fast_walsh_hadamard_path_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 1..=8 {
            let g = GroupSpec::new(&vec![2u64; k]).unwrap();
            let f = random_function(&g, &mut rng);
            assert!(max_diff(dft(&f).coeffs(), naive_dft(&f).coeffs()) < TIGHT);
        }
    }

    #[test]
    fn translation_covariance() {
        let g = GroupSpec::new(&[5, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = random_function(&g, &mut rng);
        let spec = dft(&f);
        for _ in 0..10 {
            let z = g.element_at(rng.random_range(0..g.order()));
            let shifted = dft(&f.translate(&z).unwrap());
            for (i, c) in shifted.coeffs().iter().enumerate() {
                let a = g.element_at(i as u64);
                let expected = char_eval(&g, &a, &z).unwrap() * spec.coeffs()[i];
                assert!((c - expected).norm() < TIGHT);
            }
        }
    }

    #[test]
    fn lp_norm_examples() {
        let g = GroupSpec::new(&[5]).unwrap();
        let a = g.element(&[2]).unwrap();
        let chi = GroupFunction::from_fn(g.clone(), |x| char_eval(&g, &a, x).unwrap()).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            assert!((chi.lp_norm(p).unwrap() - 1.0).abs() < TIGHT);
        }

        let n = 12u64;
        let gg = GroupSpec::new(&[n]).unwrap();
        let delta = GroupFunction::point_mass(gg.clone(), &gg.zero(), Complex64::new(n as f64, 0.0))
            .unwrap();
        assert!((delta.lp_norm(1.0).unwrap() - 1.0).abs() < TIGHT);
        assert!((delta.lp_norm(2.0).unwrap() - (n as f64).sqrt()).abs() < TIGHT);

        assert!(delta.lp_norm(0.5).is_err());
    }

    #[test]
    fn lp_norms_nest() {
        let g = GroupSpec::new(&[7, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let f = random_function(&g, &mut rng);
            let n1 = f.lp_norm(1.0).unwrap();
            let n2 = f.lp_norm(2.0).unwrap();
            let ninf = f.lp_norm(f64::INFINITY).unwrap();
            assert!(n1 <= n2 + TIGHT && n2 <= ninf + TIGHT);
        }
    }

    #[test]
    fn projection_examples() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let f = random_function(&g, &mut rng);

        let full = CharSet::full(g.clone()).unwrap();
        assert!(max_diff(project(&f, &full).unwrap().values(), f.values()) < TIGHT);

        let empty = CharSet::new(g.clone(), []).unwrap();
        let z = project(&f, &empty).unwrap();
        assert!(z.values().iter().all(|v| v.norm() < TIGHT));

        let a = g.element(&[1, 0]).unwrap();
        let b = g.element(&[0, 2]).unwrap();
        let two = GroupFunction::from_fn(g.clone(), |x| {
            char_eval(&g, &a, x).unwrap() + char_eval(&g, &b, x).unwrap()
        })
        .unwrap();
        let only_a = CharSet::new(g.clone(), [a.clone()]).unwrap();
        let chi_a = GroupFunction::from_fn(g.clone(), |x| char_eval(&g, &a, x).unwrap()).unwrap();
        assert!(max_diff(project(&two, &only_a).unwrap().values(), chi_a.values()) < TIGHT);
    }

    #[test]
    fn projection_is_idempotent_contraction() {
        let g = GroupSpec::new(&[4, 5]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let members: BTreeSet<_> = (0..7).map(|_| g.element_at(rng.random_range(0..g.order()))).collect();
        let support = CharSet::new(g.clone(), members).unwrap();
        for _ in 0..10 {
            let f = random_function(&g, &mut rng);
            let once = project(&f, &support).unwrap();
            let twice = project(&once, &support).unwrap();
            assert!(max_diff(once.values(), twice.values()) < TIGHT);
            assert!(once.lp_norm(2.0).unwrap() <= f.lp_norm(2.0).unwrap() + TIGHT);
            assert!(dft(&once).max_outside(&support) < TIGHT);
        }
    }

    #[test]
    fn dirichlet_kernel_examples() {
        let g = GroupSpec::new(&[2, 2]).unwrap();
        let full = CharSet::full(g.clone()).unwrap();
        let d = dirichlet_kernel(&g, &full).unwrap();
        let n = g.order() as f64;
        assert!((d.value_at(&g.zero()) - Complex64::new(n, 0.0)).norm() < TIGHT);
        for x in g.elements().skip(1) {
            assert!(d.value_at(&x).norm() < TIGHT);
        }

        let z3 = GroupSpec::new(&[3]).unwrap();
        let support = CharSet::new(z3.clone(), [z3.element(&[0]).unwrap(), z3.element(&[1]).unwrap()])
            .unwrap();
        let d = dirichlet_kernel(&z3, &support).unwrap();
        let omega = Complex64::from_polar(1.0, TAU / 3.0);
        let expected = [
            Complex64::new(2.0, 0.0),
            Complex64::ONE + omega,
            Complex64::ONE + omega * omega,
        ];
        assert!(max_diff(d.values(), &expected) < TIGHT);
        assert!((d.lp_norm(f64::INFINITY).unwrap() - support.len() as f64).abs() < TIGHT);

        assert!(matches!(
            dirichlet_kernel(&z3, &CharSet::new(z3.clone(), []).unwrap()),
            Err(Error::EmptyCharSet)
        ));
    }

    #[test]
    fn projection_norm_examples() {
        let g = GroupSpec::new(&[2, 4]).unwrap();
        let full = CharSet::full(g.clone()).unwrap();
        assert!((projection_norm_1to1(&g, &full).unwrap() - 1.0).abs() < TIGHT);

        let single = CharSet::new(g.clone(), [g.element(&[1, 3]).unwrap()]).unwrap();
        assert!((projection_norm_1to1(&g, &single).unwrap() - 1.0).abs() < TIGHT);

        let z3 = GroupSpec::new(&[3]).unwrap();
        let support = CharSet::new(z3.clone(), [z3.element(&[0]).unwrap(), z3.element(&[1]).unwrap()])
            .unwrap();
        assert!((projection_norm_1to1(&z3, &support).unwrap() - 4.0 / 3.0).abs() < TIGHT);
    }

    /// The 1->1 norm equals the maximum over point masses exactly: projecting
    /// |G| delta_y yields a translate of the kernel for every y.
    #[test]
    fn projection_norm_matches_point_mass_maximization() {
        let g = GroupSpec::new(&[3, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let members: BTreeSet<_> = (0..5).map(|_| g.element_at(rng.random_range(0..g.order()))).collect();
        let support = CharSet::new(g.clone(), members).unwrap();
        let k = projection_norm_1to1(&g, &support).unwrap();
        let best = (0..g.order())
            .map(|i| {
                let y = g.element_at(i);
                let f = GroupFunction::point_mass(
                    g.clone(),
                    &y,
                    Complex64::new(g.order() as f64, 0.0),
                )
                .unwrap();
                project(&f, &support).unwrap().lp_norm(1.0).unwrap()
            })
            .fold(0.0, f64::max);
        assert!((k - best).abs() < TIGHT);
    }

    #[test]
    fn algebra_norm_examples() {
        // single pair: a lone character has unit L_1 norm
        let prod = GroupSpec::new(&[2, 2, 3]).unwrap();
        let single: BTreeSet<_> = [prod.element(&[1, 0, 2]).unwrap()].into();
        assert!((algebra_norm_indicator(&prod, &single).unwrap() - 1.0).abs() < TIGHT);

        // graph of the identity on the dual of Z/N x Z/N
        let n = 5u64;
        let prod = GroupSpec::new(&[n, n]).unwrap();
        let graph: BTreeSet<_> = (0..n).map(|a| prod.element(&[a, a]).unwrap()).collect();
        assert!((algebra_norm_indicator(&prod, &graph).unwrap() - 1.0).abs() < TIGHT);

        assert_eq!(algebra_norm_indicator(&prod, &BTreeSet::new()).unwrap(), 0.0);
    }

    #[test]
    fn algebra_norm_matches_direct_summation() {
        let prod = GroupSpec::new(&[2, 2, 2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let pts: BTreeSet<_> = (0..3)
                .map(|_| prod.element_at(rng.random_range(0..prod.order())))
                .collect();
            let fast = algebra_norm_indicator(&prod, &pts).unwrap();
            // phi(u) = sum_gamma chi_gamma(-u), evaluated straight from the definition
            let direct = GroupFunction::from_fn(prod.clone(), |u| {
                let neg = prod.neg(u).unwrap();
                pts.iter()
                    .map(|gamma| char_eval(&prod, gamma, &neg).unwrap())
                    .sum()
            })
            .unwrap();
            assert!((fast - direct.lp_norm(1.0).unwrap()).abs() < TIGHT);
        }
    }

    #[test]
    fn walsh_sampling_examples() {
        let w = sample_walsh(2, &BTreeSet::from([0])).unwrap();
        let expected: Vec<Complex64> = [1.0, 1.0, -1.0, -1.0]
            .iter()
            .map(|&re| Complex64::new(re, 0.0))
            .collect();
        assert_eq!(w.values(), &expected[..]);

        let flat = sample_walsh(2, &BTreeSet::new()).unwrap();
        assert!(flat.values().iter().all(|&v| v == Complex64::ONE));

        // J = {0,1} at level 3 is the character with dual index (1,1,0)
        let w = sample_walsh(3, &BTreeSet::from([0, 1])).unwrap();
        let g = w.group().clone();
        let a = g.element(&[1, 1, 0]).unwrap();
        for x in g.elements() {
            assert_eq!(w.value_at(&x), char_eval(&g, &a, &x).unwrap());
        }

        assert!(sample_walsh(2, &BTreeSet::from([2])).is_err());
    }

    #[test]
    fn walsh_multiplicativity() {
        let level = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let j1: BTreeSet<usize> = (0..level).filter(|_| rng.random_bool(0.5)).collect();
            let j2: BTreeSet<usize> = (0..level).filter(|_| rng.random_bool(0.5)).collect();
            let sym: BTreeSet<usize> = j1.symmetric_difference(&j2).copied().collect();
            let w1 = sample_walsh(level, &j1).unwrap();
            let w2 = sample_walsh(level, &j2).unwrap();
            let ws = sample_walsh(level, &sym).unwrap();
            for ((a, b), c) in w1.values().iter().zip(w2.values()).zip(ws.values()) {
                assert!(a.re == 1.0 || a.re == -1.0);
                assert_eq!(a * b, *c);
            }
        }
    }

    #[test]
    fn trig_sampling_examples() {
        let flat = sample_trig(6, 0).unwrap();
        assert!(flat.values().iter().all(|&v| v == Complex64::ONE));

        let f = sample_trig(4, 1).unwrap();
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        assert_eq!(f.values(), &expected[..]);

        let a = sample_trig(8, 9).unwrap();
        let b = sample_trig(8, 1).unwrap();
        assert_eq!(a.values(), b.values());
        let c = sample_trig(8, -7).unwrap();
        assert_eq!(c.values(), b.values());
    }

    #[test]
    fn convolution_diagonalizes() {
        let g = GroupSpec::new(&[3, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let f = random_function(&g, &mut rng);
        let h = random_function(&g, &mut rng);
        let conv = convolve(&f, &h).unwrap();
        let lhs = dft(&conv);
        let (sf, sh) = (dft(&f), dft(&h));
        for (i, c) in lhs.coeffs().iter().enumerate() {
            assert!((c - sf.coeffs()[i] * sh.coeffs()[i]).norm() < TIGHT);
        }
    }
}
