//! Deciding property P (and its minus-side twin) for a germ.
//!
//! Three routes, tried in order: the exact two-index shortcut through the
//! unimodular-extension problem, gauge-independent structural obstructions,
//! and a bounded exhaustive search over gauge entries that answers Unknown
//! when it runs out of room. Every positive answer is re-checked by
//! [`verify_property_p`] (or its minus twin), which multiplies full matrices
//! instead of reusing the block formulas the search runs on.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{conjugated_blocks, Blocks, GaugeElement, GermComplex, GermError, Label};
use crate::homology::{self, HomologyGroup};
use crate::intmat::{self, IntMatrix};
use crate::omega::{self, OmegaInstance, OmegaObstruction};

/// Cap on gauge candidates (partial and complete) visited by one search.
pub const SEARCH_NODE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyStatus {
    Satisfied,
    Violated,
    Unknown,
}

impl fmt::Display for PropertyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyStatus::Satisfied => "satisfied",
            PropertyStatus::Violated => "violated",
            PropertyStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionRoute {
    TwoIndex,
    Structural,
    Search,
}

impl fmt::Display for DecisionRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionRoute::TwoIndex => "two-index",
            DecisionRoute::Structural => "structural",
            DecisionRoute::Search => "search",
        })
    }
}

/// Why a particular gauge element fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateFailure {
    NotInGauge(String),
    MixedBlock { degree: usize },
    NotAComplex { degree: usize },
    Homology { degree: usize, group: HomologyGroup },
}

impl fmt::Display for CandidateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateFailure::NotInGauge(why) => write!(f, "not a gauge element: {why}"),
            CandidateFailure::MixedBlock { degree } => {
                write!(f, "mixed block in degree {degree} does not vanish")
            }
            CandidateFailure::NotAComplex { degree } => {
                write!(f, "sub-complex fails d^2 = 0 in degree {degree}")
            }
            CandidateFailure::Homology { degree, group } => {
                write!(f, "sub-complex has H_{degree} = {group}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyObstruction {
    /// The two middle degrees carry different numbers of points on the
    /// relevant side, so the middle block can never be square.
    RankMismatch {
        label: Label,
        upper_degree: usize,
        upper: usize,
        lower: usize,
    },
    /// The middle block can never be made unimodular.
    Omega {
        degree: usize,
        obstruction: OmegaObstruction,
    },
    /// The sub-complex has the wrong Euler characteristic for any gauge.
    EulerCharacteristic {
        label: Label,
        expected: i64,
        found: i64,
    },
    /// The degree that must carry `Z` has no generators on this side.
    EmptyDegree { label: Label, degree: usize },
    /// The gauge group is trivial and the identity fails.
    OnlyIdentity(CandidateFailure),
}

impl fmt::Display for PropertyObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyObstruction::RankMismatch {
                label,
                upper_degree,
                upper,
                lower,
            } => write!(
                f,
                "{label} points: {upper} in degree {upper_degree} but {lower} in degree {}",
                upper_degree - 1
            ),
            PropertyObstruction::Omega {
                degree,
                obstruction,
            } => match obstruction {
                OmegaObstruction::NotSurjective { divisor } => write!(
                    f,
                    "degree {degree}: [B C] is not onto (top determinantal divisor {divisor})"
                ),
                OmegaObstruction::DeterminantResidue {
                    determinant,
                    modulus,
                    residue,
                } => write!(
                    f,
                    "degree {degree}: det = {determinant} is {residue} mod {modulus}, not +-1"
                ),
            },
            PropertyObstruction::EulerCharacteristic {
                label,
                expected,
                found,
            } => write!(
                f,
                "{label} sub-complex has Euler characteristic {found}, needs {expected}"
            ),
            PropertyObstruction::EmptyDegree { label, degree } => {
                write!(f, "no {label} points in degree {degree}")
            }
            PropertyObstruction::OnlyIdentity(why) => {
                write!(f, "gauge group is trivial and the identity fails: {why}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyPVerdict {
    status: PropertyStatus,
    route: DecisionRoute,
    witness: Option<GaugeElement>,
    obstruction: Option<PropertyObstruction>,
    search_bound: Option<u64>,
}

impl PropertyPVerdict {
    fn violated(route: DecisionRoute, obstruction: PropertyObstruction) -> Self {
        PropertyPVerdict {
            status: PropertyStatus::Violated,
            route,
            witness: None,
            obstruction: Some(obstruction),
            search_bound: None,
        }
    }

    fn unknown(bound: u64) -> Self {
        PropertyPVerdict {
            status: PropertyStatus::Unknown,
            route: DecisionRoute::Search,
            witness: None,
            obstruction: None,
            search_bound: Some(bound),
        }
    }

    /// Positive verdicts exist only after the independent verifier agrees.
    fn satisfied(
        germ: &GermComplex,
        side: Side,
        route: DecisionRoute,
        witness: GaugeElement,
    ) -> Result<Self, GermError> {
        side.verify(germ, &witness).map_err(|why| {
            GermError::Fault(format!(
                "{route} route produced a gauge element that fails verification: {why}"
            ))
        })?;
        Ok(PropertyPVerdict {
            status: PropertyStatus::Satisfied,
            route,
            witness: Some(witness),
            obstruction: None,
            search_bound: None,
        })
    }

    pub fn status(&self) -> PropertyStatus {
        self.status
    }

    pub fn route(&self) -> DecisionRoute {
        self.route
    }

    pub fn witness(&self) -> Option<&GaugeElement> {
        self.witness.as_ref()
    }

    pub fn obstruction(&self) -> Option<&PropertyObstruction> {
        self.obstruction.as_ref()
    }

    /// The search radius fully covered, for Unknown verdicts.
    pub fn search_bound(&self) -> Option<u64> {
        self.search_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Plus,
    Minus,
}

impl Side {
    fn label(self) -> Label {
        match self {
            Side::Plus => Label::Plus,
            Side::Minus => Label::Minus,
        }
    }

    fn verify(self, germ: &GermComplex, g: &GaugeElement) -> Result<(), CandidateFailure> {
        match self {
            Side::Plus => verify_property_p(germ, g),
            Side::Minus => verify_property_p_minus(germ, g),
        }
    }

    fn dims(self, germ: &GermComplex) -> Vec<usize> {
        (0..=germ.n())
            .map(|k| match self {
                Side::Plus => germ.plus_count(k),
                Side::Minus => germ.minus_count(k),
            })
            .collect()
    }

    /// Degree where the sub-complex must have `Z`.
    fn target_degree(self, n: usize) -> usize {
        match self {
            Side::Plus => n,
            Side::Minus => 0,
        }
    }

    fn diagonal(self, b: &Blocks) -> &IntMatrix {
        match self {
            Side::Plus => &b.pp,
            Side::Minus => &b.mm,
        }
    }
}

/// `Z` in `target` degree and zero elsewhere for the sub-complex formed by
/// the diagonal blocks on one side.
fn check_subcomplex(
    dims: &[usize],
    maps: Vec<IntMatrix>,
    target: usize,
) -> Result<(), CandidateFailure> {
    let groups = homology::chain_homology(dims, &maps).map_err(|e| match e {
        homology::ChainError::NotAComplex { degree } => CandidateFailure::NotAComplex { degree },
        other => CandidateFailure::NotInGauge(other.to_string()),
    })?;
    for (k, h) in groups.into_iter().enumerate() {
        let ok = if k == target {
            h.is_integers()
        } else {
            h.is_zero()
        };
        if !ok {
            return Err(CandidateFailure::Homology {
                degree: k,
                group: h,
            });
        }
    }
    Ok(())
}

/// `[[I, 0], [N_k, I]]` as a full square matrix.
fn unipotent(germ: &GermComplex, n_k: &IntMatrix, k: usize, sign: i64) -> IntMatrix {
    let p = germ.plus_count(k);
    let size = germ.count(k);
    let sign = BigInt::from(sign);
    IntMatrix::from_fn(size, size, |i, j| {
        if i == j {
            BigInt::from(1)
        } else if i >= p && j < p {
            &n_k[(i - p, j)] * &sign
        } else {
            BigInt::zero()
        }
    })
}

/// Conjugates by full matrices: `M_{k-1} d_k M_k^{-1}` in every degree.
fn conjugate_by_products(
    germ: &GermComplex,
    g: &GaugeElement,
) -> Result<GermComplex, CandidateFailure> {
    match germ.gauge_membership(g) {
        Ok(true) => {}
        Ok(false) => return Err(CandidateFailure::NotInGauge("forbidden entry".into())),
        Err(e) => return Err(CandidateFailure::NotInGauge(e.to_string())),
    }
    let mut boundary = germ.boundaries().to_vec();
    for (k, d) in boundary.iter_mut().enumerate().take(germ.n() + 1).skip(1) {
        let left = unipotent(germ, g.block(k - 1), k - 1, 1);
        let right_inv = unipotent(germ, g.block(k), k, -1);
        *d = left
            .mul(d)
            .and_then(|m| m.mul(&right_inv))
            .expect("square factors of matching size");
    }
    germ.with_boundary(boundary)
        .map_err(|e| CandidateFailure::NotInGauge(e.to_string()))
}

fn verify_side(germ: &GermComplex, g: &GaugeElement, side: Side) -> Result<(), CandidateFailure> {
    let h = conjugate_by_products(germ, g)?;
    let n = germ.n();
    let blocks: Vec<Blocks> = (0..=n + 1).map(|k| h.blocks(k)).collect();
    for (k, b) in blocks.iter().enumerate() {
        if !b.mp.is_zero() {
            return Err(CandidateFailure::MixedBlock { degree: k });
        }
    }
    let maps = blocks.iter().map(|b| side.diagonal(b).clone()).collect();
    check_subcomplex(&side.dims(germ), maps, side.target_degree(n))
}

/// Checks that `g` is a gauge element whose conjugate has vanishing
/// minus-plus blocks and a plus sub-complex with homology `Z` in degree `n`
/// and zero elsewhere.
pub fn verify_property_p(germ: &GermComplex, g: &GaugeElement) -> Result<(), CandidateFailure> {
    verify_side(germ, g, Side::Plus)
}

/// Minus-side twin: vanishing minus-plus blocks and a minus sub-complex with
/// homology `Z` in degree `0` and zero elsewhere.
pub fn verify_property_p_minus(
    germ: &GermComplex,
    g: &GaugeElement,
) -> Result<(), CandidateFailure> {
    verify_side(germ, g, Side::Minus)
}

/// The lower of the two middle degrees when the germ has the two-index
/// shape: `n >= 6`, a single plus point of index `n`, a single minus point of
/// index `0`, every other point in degrees `k` or `k + 1` with
/// `2 <= k <= n - 2`, and in both of those degrees every plus point above
/// every minus point.
pub fn two_index_degree(germ: &GermComplex) -> Result<usize, GermError> {
    let n = germ.n();
    let na = |why: String| Err(GermError::NotApplicable(why));
    if n < 6 {
        return na(format!("two-index shortcut needs n >= 6, got {n}"));
    }
    let top = germ.natural_order(n);
    if top.len() != 1 || top[0].label != Label::Plus {
        return na("needs exactly one index-n point, labelled +".into());
    }
    let bottom = germ.natural_order(0);
    if bottom.len() != 1 || bottom[0].label != Label::Minus {
        return na("needs exactly one index-0 point, labelled -".into());
    }
    let used: Vec<usize> = (1..n).filter(|&k| germ.count(k) > 0).collect();
    let k = match used.as_slice() {
        [] => 2,
        [a] if *a <= n - 2 && *a >= 2 => *a,
        [a] => *a - 1,
        [a, b] if *b == *a + 1 => *a,
        _ => return na("middle points span more than two adjacent indices".into()),
    };
    if k < 2 || k > n - 2 {
        return na(format!("middle degrees {k}, {} out of range", k + 1));
    }
    for j in [k, k + 1] {
        let gens = germ.natural_order(j);
        let p = germ.plus_count(j);
        let lowest_plus = gens[..p].iter().map(|pt| &pt.value).min();
        let highest_minus = gens[p..].iter().map(|pt| &pt.value).max();
        if let (Some(lo), Some(hi)) = (lowest_plus, highest_minus) {
            if lo <= hi {
                return na(format!("degree {j} has a minus point above a plus point"));
            }
        }
    }
    Ok(k)
}

/// Exact decision for two-index germs (see [`two_index_degree`]).
pub fn two_index_check(germ: &GermComplex) -> Result<PropertyPVerdict, GermError> {
    germ.ensure_valid()?;
    let k = two_index_degree(germ)?;
    two_index_plus(germ, k)
}

fn rank_mismatch(label: Label, k: usize, upper: usize, lower: usize) -> PropertyPVerdict {
    PropertyPVerdict::violated(
        DecisionRoute::TwoIndex,
        PropertyObstruction::RankMismatch {
            label,
            upper_degree: k + 1,
            upper,
            lower,
        },
    )
}

fn two_index_plus(germ: &GermComplex, k: usize) -> Result<PropertyPVerdict, GermError> {
    let (p_up, p_low) = (germ.plus_count(k + 1), germ.plus_count(k));
    if p_up != p_low {
        return Ok(rank_mismatch(Label::Plus, k, p_up, p_low));
    }
    let b = germ.blocks(k + 1);
    // the ++ block becomes d++ - d+- N
    let inst = OmegaInstance::new(b.pp.clone(), b.pm.neg())?;
    let verdict = omega::omega_construct(&inst)?;
    let Some(upper) = verdict.witness().cloned() else {
        let obstruction = verdict
            .obstruction()
            .cloned()
            .expect("negative verdict carries an obstruction");
        return Ok(PropertyPVerdict::violated(
            DecisionRoute::TwoIndex,
            PropertyObstruction::Omega {
                degree: k + 1,
                obstruction,
            },
        ));
    };
    // -+ equation: 0 = d-+ - d-- N_{k+1} + N_k (d++ - d+- N_{k+1})
    let new_pp = b.pp.sub(&b.pm.mul(&upper)?)?;
    let inv = intmat::inverse_unimodular(&new_pp)?;
    let lower = b.mm.mul(&upper)?.sub(&b.mp)?.mul(&inv)?;
    let mut g = GaugeElement::identity(germ);
    g.set_block(k + 1, upper)?;
    g.set_block(k, lower)?;
    PropertyPVerdict::satisfied(germ, Side::Plus, DecisionRoute::TwoIndex, g)
}

fn two_index_minus(germ: &GermComplex, k: usize) -> Result<PropertyPVerdict, GermError> {
    let (q_up, q_low) = (germ.minus_count(k + 1), germ.minus_count(k));
    if q_up != q_low {
        return Ok(rank_mismatch(Label::Minus, k, q_up, q_low));
    }
    let b = germ.blocks(k + 1);
    // the -- block becomes d-- + N_k d+-; transpose to put N on the right
    let inst = OmegaInstance::new(b.mm.transpose(), b.pm.transpose())?;
    let verdict = omega::omega_construct(&inst)?;
    let Some(lower_t) = verdict.witness() else {
        let obstruction = verdict
            .obstruction()
            .cloned()
            .expect("negative verdict carries an obstruction");
        return Ok(PropertyPVerdict::violated(
            DecisionRoute::TwoIndex,
            PropertyObstruction::Omega {
                degree: k + 1,
                obstruction,
            },
        ));
    };
    let lower = lower_t.transpose();
    // -+ equation: 0 = d-+ + N_k d++ - (d-- + N_k d+-) N_{k+1}
    let new_mm = b.mm.add(&lower.mul(&b.pm)?)?;
    let inv = intmat::inverse_unimodular(&new_mm)?;
    let upper = inv.mul(&b.mp.add(&lower.mul(&b.pp)?)?)?;
    let mut g = GaugeElement::identity(germ);
    g.set_block(k + 1, upper)?;
    g.set_block(k, lower)?;
    PropertyPVerdict::satisfied(germ, Side::Minus, DecisionRoute::TwoIndex, g)
}

/// Decides property P where possible; falls back to a search over gauge
/// entries in `[-bound, bound]`.
pub fn check_property_p(germ: &GermComplex, bound: u64) -> Result<PropertyPVerdict, GermError> {
    check_side(germ, bound, Side::Plus, SEARCH_NODE_LIMIT)
}

/// Same as [`check_property_p`] for the minus-side formulation.
pub fn check_property_p_minus(
    germ: &GermComplex,
    bound: u64,
) -> Result<PropertyPVerdict, GermError> {
    check_side(germ, bound, Side::Minus, SEARCH_NODE_LIMIT)
}

/// [`check_property_p`] with an explicit cap on search nodes.
pub fn check_property_p_with_limit(
    germ: &GermComplex,
    bound: u64,
    node_limit: u64,
) -> Result<PropertyPVerdict, GermError> {
    check_side(germ, bound, Side::Plus, node_limit)
}

fn check_side(
    germ: &GermComplex,
    bound: u64,
    side: Side,
    node_limit: u64,
) -> Result<PropertyPVerdict, GermError> {
    germ.ensure_valid()?;
    if let Ok(k) = two_index_degree(germ) {
        return match side {
            Side::Plus => two_index_plus(germ, k),
            Side::Minus => two_index_minus(germ, k),
        };
    }
    if let Some(obstruction) = structural_obstruction(germ, side) {
        return Ok(PropertyPVerdict::violated(
            DecisionRoute::Structural,
            obstruction,
        ));
    }
    let mut search = Search::new(germ, side, node_limit);
    if search.free_count() == 0 {
        let g = GaugeElement::identity(germ);
        return match side.verify(germ, &g) {
            Ok(()) => PropertyPVerdict::satisfied(germ, side, DecisionRoute::Search, g),
            Err(why) => Ok(PropertyPVerdict::violated(
                DecisionRoute::Search,
                PropertyObstruction::OnlyIdentity(why),
            )),
        };
    }
    for radius in 0..=bound {
        match search.run(radius as i64) {
            Outcome::Found(g) => {
                return PropertyPVerdict::satisfied(germ, side, DecisionRoute::Search, g)
            }
            Outcome::Exhausted => {}
            Outcome::LimitReached => {
                return Ok(PropertyPVerdict::unknown(radius.saturating_sub(1)));
            }
        }
    }
    Ok(PropertyPVerdict::unknown(bound))
}

fn structural_obstruction(germ: &GermComplex, side: Side) -> Option<PropertyObstruction> {
    let n = germ.n();
    let dims = side.dims(germ);
    let target = side.target_degree(n);
    if dims[target] == 0 {
        return Some(PropertyObstruction::EmptyDegree {
            label: side.label(),
            degree: target,
        });
    }
    let euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    let expected = if target % 2 == 0 { 1 } else { -1 };
    (euler != expected).then_some(PropertyObstruction::EulerCharacteristic {
        label: side.label(),
        expected,
        found: euler,
    })
}

enum Outcome {
    Found(GaugeElement),
    Exhausted,
    LimitReached,
}

/// Depth-first search over gauge blocks, one degree at a time. After `N_k` is
/// fixed the minus-plus block of `d_k` is fully determined, so branches are
/// cut as soon as it fails to vanish. Within a radius, entries run
/// lexicographically from `-radius` to `radius`, and only candidates that
/// touch the radius are tested (smaller ones were covered earlier).
struct Search<'a> {
    germ: &'a GermComplex,
    side: Side,
    blocks: Vec<Blocks>,
    free: Vec<Vec<(usize, usize)>>,
    current: Vec<IntMatrix>,
    nodes: u64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn new(germ: &'a GermComplex, side: Side, limit: u64) -> Self {
        let n = germ.n();
        Search {
            germ,
            side,
            blocks: (0..=n + 1).map(|k| germ.blocks(k)).collect(),
            free: (0..=n).map(|k| germ.gauge_free_positions(k)).collect(),
            current: GaugeElement::identity(germ).blocks().to_vec(),
            nodes: 0,
            limit,
        }
    }

    fn free_count(&self) -> usize {
        self.free.iter().map(Vec::len).sum()
    }

    fn run(&mut self, radius: i64) -> Outcome {
        for block in &mut self.current {
            *block = IntMatrix::zeros(block.rows(), block.cols());
        }
        self.descend(0, radius, false, Vec::new())
    }

    /// `diag` collects the conjugated diagonal blocks of degrees `< k`.
    fn descend(&mut self, k: usize, radius: i64, touched: bool, diag: Vec<IntMatrix>) -> Outcome {
        let n = self.germ.n();
        if k > n {
            if !touched {
                return Outcome::Exhausted;
            }
            let mut maps = diag;
            maps.push(self.side.diagonal(&self.blocks[n + 1]).clone());
            let dims = self.side.dims(self.germ);
            if check_subcomplex(&dims, maps, self.side.target_degree(n)).is_ok() {
                return Outcome::Found(GaugeElement::from_blocks(self.current.clone()));
            }
            return Outcome::Exhausted;
        }
        let free = self.free[k].clone();
        let mut digits = vec![-radius; free.len()];
        loop {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Outcome::LimitReached;
            }
            for (&(i, j), &x) in free.iter().zip(&digits) {
                self.current[k][(i, j)] = BigInt::from(x);
            }
            let lower = if k == 0 {
                IntMatrix::zeros(0, 0)
            } else {
                self.current[k - 1].clone()
            };
            let conj = conjugated_blocks(&self.blocks[k], &lower, &self.current[k])
                .expect("gauge blocks match the germ");
            if conj.mp.is_zero() {
                let hit = touched || digits.iter().any(|x| x.abs() == radius);
                let mut next = diag.clone();
                next.push(self.side.diagonal(&conj).clone());
                match self.descend(k + 1, radius, hit, next) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            // odometer, last position fastest
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    for &(i, j) in &free {
                        self.current[k][(i, j)] = BigInt::zero();
                    }
                    return Outcome::Exhausted;
                }
                pos -= 1;
                if digits[pos] < radius {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = -radius;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{BoundaryEntry, CriticalPoint};
    use super::*;

    fn two_index(n: usize, k: usize, d: [[i64; 2]; 2]) -> GermComplex {
        GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", k + 1, Label::Plus, 40),
                CriticalPoint::new("b", k + 1, Label::Minus, 30),
                CriticalPoint::new("c", k, Label::Plus, 20),
                CriticalPoint::new("d", k, Label::Minus, 10),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[
                BoundaryEntry::new("a", "c", d[0][0]),
                BoundaryEntry::new("b", "c", d[0][1]),
                BoundaryEntry::new("a", "d", d[1][0]),
                BoundaryEntry::new("b", "d", d[1][1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn f0_is_obstructed_by_residue_two() {
        let g = two_index(6, 2, [[7, 5], [-3, -2]]);
        let v = two_index_check(&g).unwrap();
        assert_eq!(v.status(), PropertyStatus::Violated);
        assert_eq!(
            v.obstruction(),
            Some(&PropertyObstruction::Omega {
                degree: 3,
                obstruction: OmegaObstruction::DeterminantResidue {
                    determinant: 7.into(),
                    modulus: 5.into(),
                    residue: 2.into(),
                }
            })
        );
        assert_eq!(
            check_property_p(&g, 3).unwrap().status(),
            PropertyStatus::Violated
        );
        assert_eq!(
            check_property_p_minus(&g, 3).unwrap().status(),
            PropertyStatus::Violated
        );
    }

    #[test]
    fn seven_two_instance_is_satisfied() {
        let g = two_index(6, 2, [[7, 2], [-3, -1]]);
        let v = two_index_check(&g).unwrap();
        assert_eq!(v.status(), PropertyStatus::Satisfied);
        let w = v.witness().unwrap();
        assert_eq!(w.block(3), &IntMatrix::from_rows(&[vec![3]]));
        assert_eq!(w.block(2), &IntMatrix::from_rows(&[vec![0]]));
        assert!(verify_property_p(&g, w).is_ok());
        let m = check_property_p_minus(&g, 3).unwrap();
        assert_eq!(m.status(), PropertyStatus::Satisfied);
        assert!(verify_property_p_minus(&g, m.witness().unwrap()).is_ok());
    }

    #[test]
    fn trivial_germ_needs_no_gauge() {
        for n in [2, 6] {
            let g = GermComplex::trivial(n).unwrap();
            let v = check_property_p(&g, 3).unwrap();
            assert_eq!(v.status(), PropertyStatus::Satisfied);
            assert!(v.witness().unwrap().is_identity());
            let m = check_property_p_minus(&g, 3).unwrap();
            assert_eq!(m.status(), PropertyStatus::Satisfied);
        }
    }

    #[test]
    fn unit_plus_block_without_minus_points() {
        let n = 6;
        let g = GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", 3, Label::Plus, 40),
                CriticalPoint::new("c", 2, Label::Plus, 20),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[BoundaryEntry::new("a", "c", 1)],
        )
        .unwrap();
        let v = two_index_check(&g).unwrap();
        assert_eq!(v.status(), PropertyStatus::Satisfied);
        assert!(v.witness().unwrap().is_identity());
    }

    #[test]
    fn rank_mismatch_is_violated() {
        let n = 6;
        let g = GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", 3, Label::Plus, 40),
                CriticalPoint::new("c", 2, Label::Minus, 20),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[BoundaryEntry::new("a", "c", 1)],
        )
        .unwrap();
        let v = two_index_check(&g).unwrap();
        assert_eq!(v.status(), PropertyStatus::Violated);
        assert!(matches!(
            v.obstruction(),
            Some(PropertyObstruction::RankMismatch { .. })
        ));
        let m = check_property_p_minus(&g, 1).unwrap();
        assert_eq!(m.status(), PropertyStatus::Violated);
    }

    #[test]
    fn not_applicable_below_six() {
        let g = two_index(5, 2, [[7, 5], [-3, -2]]);
        assert!(matches!(
            two_index_check(&g),
            Err(GermError::NotApplicable(_))
        ));
        // the search handles it instead: the only free entries are N_3, N_2
        let v = check_property_p(&g, 3).unwrap();
        assert_ne!(v.status(), PropertyStatus::Satisfied);
    }

    #[test]
    fn search_finds_the_seven_two_witness() {
        let g = two_index(5, 2, [[7, 2], [-3, -1]]);
        let v = check_property_p(&g, 3).unwrap();
        assert_eq!(v.status(), PropertyStatus::Satisfied);
        assert_eq!(v.route(), DecisionRoute::Search);
        let m = check_property_p_minus(&g, 3).unwrap();
        assert_eq!(m.status(), PropertyStatus::Satisfied);
    }

    #[test]
    fn search_reports_unknown_when_out_of_room() {
        let g = two_index(5, 2, [[7, 5], [-3, -2]]);
        let v = check_property_p(&g, 2).unwrap();
        assert_eq!(v.status(), PropertyStatus::Unknown);
        assert_eq!(v.search_bound(), Some(2));
        let capped = check_property_p_with_limit(&g, 50, 100).unwrap();
        assert_eq!(capped.status(), PropertyStatus::Unknown);
    }

    #[test]
    fn structural_euler_obstruction() {
        // the plus points cannot be matched up: plus in degree 3 only
        let n = 4;
        let g = GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", 3, Label::Plus, 40),
                CriticalPoint::new("c", 2, Label::Minus, 20),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[BoundaryEntry::new("a", "c", 1)],
        )
        .unwrap();
        let v = check_property_p(&g, 3).unwrap();
        assert_eq!(v.status(), PropertyStatus::Violated);
        assert_eq!(v.route(), DecisionRoute::Structural);
    }

    #[test]
    fn trivial_gauge_group_is_exact() {
        // plus point below minus point: no free entries, identity fails
        let n = 4;
        let g = GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", 2, Label::Plus, 10),
                CriticalPoint::new("b", 2, Label::Minus, 40),
                CriticalPoint::new("c", 1, Label::Minus, 5),
                CriticalPoint::new("e", 1, Label::Plus, 3),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[
                BoundaryEntry::new("a", "c", 1),
                BoundaryEntry::new("b", "e", 1),
            ],
        )
        .unwrap();
        assert!(g.validate().is_valid());
        let v = check_property_p(&g, 3).unwrap();
        assert_eq!(v.status(), PropertyStatus::Violated);
        assert!(matches!(
            v.obstruction(),
            Some(PropertyObstruction::OnlyIdentity(_))
        ));
    }

    #[test]
    fn verifier_rejects_bad_witnesses() {
        let g = two_index(6, 2, [[7, 2], [-3, -1]]);
        let mut w = GaugeElement::identity(&g);
        w.set_block(3, IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert!(matches!(
            verify_property_p(&g, &w),
            Err(CandidateFailure::MixedBlock { degree: 3 })
        ));
        let wrong = GaugeElement::from_blocks(vec![]);
        assert!(matches!(
            verify_property_p(&g, &wrong),
            Err(CandidateFailure::NotInGauge(_))
        ));
    }
}
