//! Finite Abelian groups presented as products of cyclic factors.
//!
//! A group is an ordered list of moduli `[n_1, ..., n_k]`, each at least 2,
//! standing for `Z/n_1 x ... x Z/n_k`. The trivial group is the empty list.
//! By the self-duality convention the same spec also represents the dual
//! group; the pairing lives in [`crate::harmonic`].

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Elements are stored as dense residue vectors and addressed by a canonical
/// mixed-radix index: row-major with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Concatenates residues with `other`, giving an element of the product group.
    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        let mut residues = self.residues.clone();
        residues.extend_from_slice(&other.residues);
        GroupElement { residues }
    }
}

/// A finite Abelian group `Z/n_1 x ... x Z/n_k` with every `n_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    orders: Vec<u64>,
    order: u64,
}

/// Construction cap: the group order must fit in a signed 64-bit integer so
/// counting quantities (energies, set sizes) never overflow silently.
pub const ORDER_CAP: u64 = i64::MAX as u64;

impl GroupSpec {
    /// Builds a group from factor moduli, canonicalizing away factors of 1.
    ///
    /// An empty list (or a list of all 1s) yields the trivial group of order 1.
    pub fn new(orders: &[u64]) -> Result<GroupSpec> {
        let mut kept = Vec::with_capacity(orders.len());
        let mut order: u64 = 1;
        for &n in orders {
            if n == 0 {
                return Err(Error::Degenerate("zero modulus".into()));
            }
            if n == 1 {
                continue;
            }
            order = order
                .checked_mul(n)
                .filter(|&o| o <= ORDER_CAP)
                .ok_or(Error::OrderOverflow)?;
            kept.push(n);
        }
        Ok(GroupSpec {
            orders: kept,
            order,
        })
    }

    pub fn trivial() -> GroupSpec {
        GroupSpec {
            orders: Vec::new(),
            order: 1,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factor_count(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// The product group `self x other`, factors concatenated in order.
    pub fn product(&self, other: &GroupSpec) -> Result<GroupSpec> {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        GroupSpec::new(&orders)
    }

    /// Validates a residue vector and wraps it as an element of this group.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(self.shape_err("element length"));
        }
        for (&v, &n) in residues.iter().zip(&self.orders) {
            if v >= n {
                return Err(self.shape_err("residue out of range"));
            }
        }
        Ok(GroupElement {
            residues: residues.to_vec(),
        })
    }

    /// As [`element`](Self::element) but reducing each entry mod its modulus.
    pub fn element_reduced(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(self.shape_err("element length"));
        }
        Ok(GroupElement {
            residues: residues
                .iter()
                .zip(&self.orders)
                .map(|(&v, &n)| v % n)
                .collect(),
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.orders.len()],
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.residues.len() == self.orders.len()
            && x.residues.iter().zip(&self.orders).all(|(&v, &n)| v < n)
    }

    /// Canonical mixed-radix index of an element, factor 1 most significant.
    pub fn index_of(&self, x: &GroupElement) -> u64 {
        debug_assert!(self.contains(x));
        let mut idx: u64 = 0;
        for (&v, &n) in x.residues.iter().zip(&self.orders) {
            idx = idx * n + v;
        }
        idx
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        debug_assert!(idx < self.order);
        let mut residues = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            residues[i] = idx % self.orders[i];
            idx /= self.orders[i];
        }
        GroupElement { residues }
    }

    /// Iterates over all elements in canonical index order.
    ///
    /// Panics if the order does not fit in `usize`; callers stay at desk scale.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Component-wise sum mod each modulus.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_pair(a, b)?;
        Ok(GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        if !self.contains(a) {
            return Err(self.shape_err("neg"));
        }
        Ok(GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Integer dilation `m . x`: component-wise `m * v_i mod n_i`.
    ///
    /// `m = 0` gives the zero element.
    pub fn dilate(&self, m: u64, x: &GroupElement) -> Result<GroupElement> {
        if !self.contains(x) {
            return Err(self.shape_err("dilate"));
        }
        Ok(GroupElement {
            residues: x
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(&v, &n)| ((m as u128 * v as u128) % n as u128) as u64)
                .collect(),
        })
    }

    /// Image set `m . S`, deduplicated.
    pub fn dilate_set(&self, m: u64, set: &BTreeSet<GroupElement>) -> Result<BTreeSet<GroupElement>> {
        set.iter().map(|x| self.dilate(m, x)).collect()
    }

    /// Size of `m . G` without enumeration: each cyclic factor contributes
    /// `n_i / gcd(n_i, m)`.
    pub fn dilated_order(&self, m: u64) -> u64 {
        self.orders.iter().map(|&n| n / gcd(n, m % n)).product()
    }

    /// Least `m >= 1` with `m . x = 0` for all `x`: the lcm of the moduli.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| lcm(acc, n))
    }

    /// Invariant factor decomposition: integers `1 < d_1 | d_2 | ... | d_r`
    /// with the direct sum of `Z/d_i` isomorphic to this group.
    ///
    /// Each modulus is split into prime powers, then for every prime the
    /// powers are regrouped greedily: largest powers into the last factor.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &n in &self.orders {
            for (p, e) in factorize(n) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        let slots = by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; slots];
        for (p, exps) in &mut by_prime {
            exps.sort_unstable();
            // right-align: the largest power of each prime lands in d_r
            let offset = slots - exps.len();
            for (i, &e) in exps.iter().enumerate() {
                factors[offset + i] *= p.pow(e);
            }
        }
        factors
    }

    /// Closure of `F` together with 0 under addition and negation, by
    /// breadth-first saturation. The result is the subgroup generated by `F`.
    pub fn subgroup_generated(&self, gens: &BTreeSet<GroupElement>) -> Result<BTreeSet<GroupElement>> {
        for g in gens {
            if !self.contains(g) {
                return Err(self.shape_err("generator"));
            }
        }
        let mut closed: BTreeSet<GroupElement> = BTreeSet::new();
        closed.insert(self.zero());
        let mut frontier: VecDeque<GroupElement> = gens.iter().cloned().collect();
        while let Some(x) = frontier.pop_front() {
            if !closed.insert(x.clone()) {
                continue;
            }
            frontier.push_back(self.neg(&x)?);
            for y in closed.clone() {
                frontier.push_back(self.add(&x, &y)?);
            }
        }
        Ok(closed)
    }

    fn check_pair(&self, a: &GroupElement, b: &GroupElement) -> Result<()> {
        if self.contains(a) && self.contains(b) {
            Ok(())
        } else {
            Err(self.shape_err("binary op"))
        }
    }

    fn shape_err(&self, what: &str) -> Error {
        Error::ShapeMismatch {
            context: format!("{} for {:?}", what, self.orders),
        }
    }
}

/// A homomorphism between finite Abelian groups, stored as an integer matrix
/// acting on residue vectors: `y_i = sum_j M[i][j] * x_j mod m_i`.
///
/// Validity requires `m_i | n_j * M[i][j]` for every entry, so that the image
/// of each domain generator has compatible order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: GroupSpec,
    codomain: GroupSpec,
    matrix: Vec<Vec<u64>>,
}

impl GroupHom {
    /// Validates the generator relation and reduces entries mod the codomain
    /// modulus of their row.
    pub fn new(domain: GroupSpec, codomain: GroupSpec, matrix: Vec<Vec<u64>>) -> Result<GroupHom> {
        if matrix.len() != codomain.factor_count() {
            return Err(Error::ShapeMismatch {
                context: "hom matrix row count".into(),
            });
        }
        let mut reduced = Vec::with_capacity(matrix.len());
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != domain.factor_count() {
                return Err(Error::ShapeMismatch {
                    context: "hom matrix column count".into(),
                });
            }
            let m_i = codomain.orders()[i];
            let mut out = Vec::with_capacity(row.len());
            for (j, &entry) in row.iter().enumerate() {
                let e = entry % m_i;
                let n_j = domain.orders()[j];
                if (n_j as u128 * e as u128) % m_i as u128 != 0 {
                    return Err(Error::InvalidHom { row: i, col: j });
                }
                out.push(e);
            }
            reduced.push(out);
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix: reduced,
        })
    }

    /// Identity on `g`.
    pub fn identity(g: &GroupSpec) -> GroupHom {
        let k = g.factor_count();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect();
        GroupHom::new(g.clone(), g.clone(), matrix).expect("identity is always valid")
    }

    /// Projection of a product group onto a prefix of its factors.
    pub fn projection(domain: &GroupSpec, keep: usize) -> Result<GroupHom> {
        let codomain = GroupSpec::new(&domain.orders()[..keep])?;
        let matrix = (0..keep)
            .map(|i| {
                (0..domain.factor_count())
                    .map(|j| u64::from(i == j))
                    .collect()
            })
            .collect();
        GroupHom::new(domain.clone(), codomain, matrix)
    }

    pub fn domain(&self) -> &GroupSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupSpec {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    /// Matrix-vector product reduced mod the codomain moduli.
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if !self.domain.contains(x) {
            return Err(Error::ShapeMismatch {
                context: "hom apply".into(),
            });
        }
        let residues = self
            .matrix
            .iter()
            .zip(self.codomain.orders())
            .map(|(row, &m_i)| {
                let mut acc: u128 = 0;
                for (&e, &v) in row.iter().zip(x.residues()) {
                    acc = (acc + e as u128 * v as u128) % m_i as u128;
                }
                acc as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// The image as a subgroup of the codomain, generated by the images of
    /// the domain's standard generators.
    pub fn image(&self) -> Result<BTreeSet<GroupElement>> {
        let mut gens = BTreeSet::new();
        for j in 0..self.domain.factor_count() {
            let mut residues = vec![0u64; self.domain.factor_count()];
            residues[j] = 1;
            gens.insert(self.apply(&GroupElement { residues })?);
        }
        self.codomain.subgroup_generated(&gens)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()?.len() as u64 == self.codomain.order())
    }

    /// The dual homomorphism between the dual groups (same specs under the
    /// self-duality convention): pairing-adjoint, so that the character
    /// indexed by `dual(a)` on the domain equals the character indexed by
    /// `a` composed with `self`.
    ///
    /// Entrywise: `dual_M[j][i] = n_j * M[i][j] / m_i mod n_j`, an integer by
    /// the generator relation.
    pub fn dual(&self) -> GroupHom {
        let n = self.domain.orders();
        let m = self.codomain.orders();
        let matrix: Vec<Vec<u64>> = (0..self.domain.factor_count())
            .map(|j| {
                (0..self.codomain.factor_count())
                    .map(|i| {
                        let scaled = (n[j] as u128 * self.matrix[i][j] as u128) / m[i] as u128;
                        (scaled % n[j] as u128) as u64
                    })
                    .collect()
            })
            .collect();
        GroupHom::new(self.codomain.clone(), self.domain.clone(), matrix)
            .expect("dual of a valid hom is valid")
    }
}

/// Selects, among divisors `m` of the exponent of `g_dual x h_dual` with
/// `m . h_dual` nontrivial, the one minimizing `|m . g_dual|`, ties broken by
/// the smallest `m`. Returns `(m, |m . g_dual|, |m . h_dual|)`.
pub fn best_dilation(g_dual: &GroupSpec, h_dual: &GroupSpec) -> Result<(u64, u64, u64)> {
    if g_dual.is_trivial() || h_dual.is_trivial() {
        return Err(Error::Degenerate("best_dilation needs nontrivial groups".into()));
    }
    let joint = lcm(g_dual.exponent(), h_dual.exponent());
    let mut best: Option<(u64, u64, u64)> = None;
    for m in divisors(joint) {
        let size_h = h_dual.dilated_order(m);
        if size_h == 1 {
            continue;
        }
        let size_g = g_dual.dilated_order(m);
        let better = match best {
            None => true,
            Some((bm, bg, _)) => size_g < bg || (size_g == bg && m < bm),
        };
        if better {
            best = Some((m, size_g, size_h));
        }
    }
    // m = 1 always qualifies because h_dual is nontrivial
    Ok(best.expect("divisor 1 keeps h_dual alive"))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division; moduli here are desk scale.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}
