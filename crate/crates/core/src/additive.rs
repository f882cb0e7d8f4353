//! Sumset calculus and additive energy.
//!
//! All counts are exact 64-bit integers with checked arithmetic. Energy is
//! computed by convolution counting — a hash multiset of pair sums keyed by
//! canonical element index — so the ambient group may be enormous as long as
//! the sets themselves stay at desk scale.

use std::collections::{BTreeSet, HashMap};

use crate::abelian::{GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// Largest set size for which the energy (bounded by `|set|^3`) still fits
/// in a signed 64-bit integer.
pub const ENERGY_SET_CAP: u64 = 2_097_151; // (2^63 - 1)^(1/3), rounded down

/// The graph of a function between character sets: pairs `(lambda, mu)` with
/// pairwise distinct first coordinates, living in the product of two duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGraph {
    g_dual: GroupSpec,
    h_dual: GroupSpec,
    pairs: Vec<(GroupElement, GroupElement)>,
    prod_dual: GroupSpec,
}

impl MapGraph {
    /// Validates membership and the function property (distinct first
    /// coordinates); pairs are stored sorted by the first coordinate's
    /// canonical index so equal graphs compare equal.
    pub fn new(
        g_dual: GroupSpec,
        h_dual: GroupSpec,
        pairs: impl IntoIterator<Item = (GroupElement, GroupElement)>,
    ) -> Result<MapGraph> {
        let mut pairs: Vec<(GroupElement, GroupElement)> = pairs.into_iter().collect();
        for (a, b) in &pairs {
            if !g_dual.contains(a) {
                return Err(Error::ShapeMismatch {
                    context: "graph first coordinate".into(),
                });
            }
            if !h_dual.contains(b) {
                return Err(Error::ShapeMismatch {
                    context: "graph second coordinate".into(),
                });
            }
        }
        pairs.sort_by_key(|(a, _)| g_dual.index_of(a));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Degenerate(
                "repeated first coordinate: not the graph of a function".into(),
            ));
        }
        let prod_dual = g_dual.product(&h_dual)?;
        Ok(MapGraph {
            g_dual,
            h_dual,
            pairs,
            prod_dual,
        })
    }

    pub fn g_dual(&self) -> &GroupSpec {
        &self.g_dual
    }

    pub fn h_dual(&self) -> &GroupSpec {
        &self.h_dual
    }

    pub fn prod_dual(&self) -> &GroupSpec {
        &self.prod_dual
    }

    pub fn pairs(&self) -> &[(GroupElement, GroupElement)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// First coordinates: the domain of the mapped function.
    pub fn domain(&self) -> BTreeSet<GroupElement> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Second coordinates, deduplicated: the image of the mapped function.
    pub fn image(&self) -> BTreeSet<GroupElement> {
        self.pairs.iter().map(|(_, b)| b.clone()).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.pairs.len()
    }

    /// Looks up the image of `a` under the mapped function.
    pub fn apply(&self, a: &GroupElement) -> Option<&GroupElement> {
        let idx = self
            .pairs
            .binary_search_by_key(&self.g_dual.index_of(a), |(x, _)| self.g_dual.index_of(x))
            .ok()?;
        Some(&self.pairs[idx].1)
    }

    /// The graph points as elements of the product group.
    pub fn product_points(&self) -> BTreeSet<GroupElement> {
        self.pairs.iter().map(|(a, b)| a.concat(b)).collect()
    }

    /// The graph of the inverse function; requires injectivity.
    pub fn inverse(&self) -> Result<MapGraph> {
        if !self.is_injective() {
            return Err(Error::NotInjective {
                pairs: self.pairs.len(),
                image: self.image().len(),
            });
        }
        MapGraph::new(
            self.h_dual.clone(),
            self.g_dual.clone(),
            self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())),
        )
    }
}

/// `{a + b : a in A, b in B}`, deduplicated.
pub fn sumset(
    g: &GroupSpec,
    a: &BTreeSet<GroupElement>,
    b: &BTreeSet<GroupElement>,
) -> Result<BTreeSet<GroupElement>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(g.add(x, y)?);
        }
    }
    Ok(out)
}

/// The `m`-fold sumset `A + ... + A` for `m >= 1`.
pub fn iterated_sumset(g: &GroupSpec, m: u64, a: &BTreeSet<GroupElement>) -> Result<BTreeSet<GroupElement>> {
    if m == 0 {
        return Err(Error::Degenerate("iterated sumset needs m >= 1".into()));
    }
    let mut out = a.clone();
    for _ in 1..m {
        out = sumset(g, &out, a)?;
    }
    Ok(out)
}

fn check_energy_cap(len: usize) -> Result<()> {
    if len as u64 > ENERGY_SET_CAP {
        return Err(Error::CountOverflow(format!(
            "set of {len} points: cube exceeds 64 bits"
        )));
    }
    Ok(())
}

/// Multiset of pair sums `a + b` over `(a, b) in A x B`, keyed by canonical
/// index in `g`.
fn pair_sum_counts(
    g: &GroupSpec,
    a: &BTreeSet<GroupElement>,
    b: &BTreeSet<GroupElement>,
) -> Result<HashMap<u64, u64>> {
    let mut counts: HashMap<u64, u64> = HashMap::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            *counts.entry(g.index_of(&g.add(x, y)?)).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// Additive energy: the exact number of quadruples in `set^4` with
/// `a1 + a2 = a3 + a4`, computed as the sum of squared pair-sum
/// multiplicities.
pub fn energy(g: &GroupSpec, set: &BTreeSet<GroupElement>) -> Result<u64> {
    check_energy_cap(set.len())?;
    let counts = pair_sum_counts(g, set, set)?;
    counts.values().try_fold(0u64, |acc, &r| {
        r.checked_mul(r)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or_else(|| Error::CountOverflow("energy".into()))
    })
}

/// Additive energy of the graph inside the product group: quadruples must
/// coincide on both the domain side and the image side simultaneously.
pub fn graph_energy(graph: &MapGraph) -> Result<u64> {
    energy(graph.prod_dual(), &graph.product_points())
}

/// Exact statistics of the counting-measure convolution `1_X * 1_{m.X}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvStats {
    /// `sum_s c(s) = |X| * |m.X|`.
    pub l1: u64,
    /// `sum_s c(s)^2`.
    pub l2sq: u64,
    /// `|X + m.X|`, the support size of the convolution.
    pub support: u64,
}

impl ConvStats {
    /// Cauchy-Schwarz: `l1^2 <= l2sq * support`, exactly.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        (self.l1 as u128).pow(2) <= self.l2sq as u128 * self.support as u128
    }
}

/// Computes [`ConvStats`] for `X` and `m.X` inside the ambient group of `X`,
/// plus the exact counting bound `l2sq <= |X| * |m.G| * |m.X|`: a coincidence
/// `x1 + y1 = x2 + y2` with `y_i in m.X` is determined by `(x1, x1 - x2, y2)`
/// and `x1 - x2` lies in the subgroup `m.G`.
pub fn conv_stats(g: &GroupSpec, x: &BTreeSet<GroupElement>, m: u64) -> Result<ConvStats> {
    if m == 0 {
        return Err(Error::Degenerate("conv_stats needs m >= 1".into()));
    }
    check_energy_cap(x.len())?;
    let mx = g.dilate_set(m, x)?;
    let counts = pair_sum_counts(g, x, &mx)?;
    let l1 = (x.len() as u64)
        .checked_mul(mx.len() as u64)
        .ok_or_else(|| Error::CountOverflow("conv l1".into()))?;
    let l2sq = counts.values().try_fold(0u64, |acc, &c| {
        c.checked_mul(c)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or_else(|| Error::CountOverflow("conv l2sq".into()))
    })?;
    Ok(ConvStats {
        l1,
        l2sq,
        support: counts.len() as u64,
    })
}

/// Exact counting bound for [`conv_stats`]: `l2sq <= |X| * |m.G| * |m.X|`.
pub fn counting_bound_holds(g: &GroupSpec, x: &BTreeSet<GroupElement>, m: u64, stats: &ConvStats) -> Result<bool> {
    let mx = g.dilate_set(m, x)?;
    let cap = x.len() as u128 * g.dilated_order(m) as u128 * mx.len() as u128;
    Ok((stats.l2sq as u128) <= cap)
}

/// Raw quantities surfaced by the energy-vs-dilation inequality; no implicit
/// constant is asserted, only `epsilon <= 1` and positivity.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDilationReport {
    pub energy: u64,
    pub graph_size: u64,
    pub dilated_g_dual: u64,
    pub dilated_image: u64,
    /// `E(Gamma) / |Gamma|^3`.
    pub epsilon: f64,
    /// `|m.G^| / |m.Im phi|`.
    pub ratio: f64,
}

/// Computes the raw ingredients of the energy-dilation inequality for a graph
/// and dilation parameter `m`.
pub fn propk_report(graph: &MapGraph, m: u64) -> Result<EnergyDilationReport> {
    if graph.is_empty() {
        return Err(Error::Degenerate("empty graph".into()));
    }
    if m == 0 {
        return Err(Error::Degenerate("dilation parameter must be >= 1".into()));
    }
    let e = graph_energy(graph)?;
    let size = graph.len() as u64;
    let dilated_g_dual = graph.g_dual().dilated_order(m);
    let image = graph.image();
    let dilated_image = graph.h_dual().dilate_set(m, &image)?.len() as u64;
    let epsilon = e as f64 / (size as f64).powi(3);
    let report = EnergyDilationReport {
        energy: e,
        graph_size: size,
        dilated_g_dual,
        dilated_image,
        epsilon,
        ratio: dilated_g_dual as f64 / dilated_image as f64,
    };
    debug_assert!(report.epsilon <= 1.0 + 1e-12);
    debug_assert!(dilated_g_dual >= 1 && dilated_image >= 1);
    Ok(report)
}

/// Search mode for [`bsg_heuristic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsgMode {
    /// Exact over all subsets, largest first; capped at 64 points.
    Exhaustive,
    /// Best-effort peeling for larger graphs; the contract is only that a
    /// returned set satisfies the doubling bound.
    Greedy,
}

/// Heuristic stand-in for dense-subset extraction: returns a largest subset
/// `X` of the graph's product points with `|X + X| <= K |X|`, or `None` when
/// no nonempty subset qualifies.
pub fn bsg_heuristic(
    graph: &MapGraph,
    k: f64,
    mode: BsgMode,
) -> Result<Option<BTreeSet<GroupElement>>> {
    let points: Vec<GroupElement> = graph.product_points().into_iter().collect();
    let prod = graph.prod_dual();
    let doubling_ok = |subset: &BTreeSet<GroupElement>| -> Result<bool> {
        let double = sumset(prod, subset, subset)?;
        Ok(double.len() as f64 <= k * subset.len() as f64)
    };
    match mode {
        BsgMode::Exhaustive => {
            if points.len() > 64 {
                return Err(Error::SizeCap {
                    cap: 64,
                    got: points.len(),
                });
            }
            // |X + X| >= |X| in a group, so K < 1 admits nothing
            if k < 1.0 {
                return Ok(None);
            }
            for size in (1..=points.len()).rev() {
                let mut found: Option<BTreeSet<GroupElement>> = None;
                for_each_subset_of_size(points.len(), size, &mut |mask| {
                    if found.is_some() {
                        return Ok(());
                    }
                    let subset: BTreeSet<GroupElement> = points
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1u64 << i) != 0)
                        .map(|(_, p)| p.clone())
                        .collect();
                    if doubling_ok(&subset)? {
                        found = Some(subset);
                    }
                    Ok(())
                })?;
                if found.is_some() {
                    return Ok(found);
                }
            }
            Ok(None)
        }
        BsgMode::Greedy => {
            // peel the point whose removal shrinks the doubling the most
            let mut subset: BTreeSet<GroupElement> = points.iter().cloned().collect();
            while !subset.is_empty() {
                if doubling_ok(&subset)? {
                    return Ok(Some(subset));
                }
                let mut best: Option<(usize, GroupElement)> = None;
                for p in &subset {
                    let mut trial = subset.clone();
                    trial.remove(p);
                    if trial.is_empty() {
                        continue;
                    }
                    let d = sumset(prod, &trial, &trial)?.len();
                    if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                        best = Some((d, p.clone()));
                    }
                }
                match best {
                    Some((_, p)) => {
                        subset.remove(&p);
                    }
                    None => break,
                }
            }
            Ok(None)
        }
    }
}

/// Visits every bitmask of `total` bits with exactly `size` set bits.
fn for_each_subset_of_size(
    total: usize,
    size: usize,
    visit: &mut impl FnMut(u64) -> Result<()>,
) -> Result<()> {
    debug_assert!(total <= 64);
    if size == 0 {
        return visit(0);
    }
    // Gosper's hack
    let mut mask: u64 = (1u64 << size) - 1;
    let limit = if total == 64 {
        u64::MAX
    } else {
        (1u64 << total) - 1
    };
    while mask <= limit {
        visit(mask)?;
        let c = mask & mask.wrapping_neg();
        let r = mask.wrapping_add(c);
        if r == 0 {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(())
}
