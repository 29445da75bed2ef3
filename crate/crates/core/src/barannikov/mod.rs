//! Canonical form of the Morse complex over a field, and the combinatorial
//! reduction of the resulting diagram to that of the trivial germ.

mod fmc;

pub use fmc::{
    fmc_from_germ, reduce_to_trivial, reduce_to_trivial_with_limit, FmcMove, FmcState, FmcVertex,
    Reduction, STATE_LIMIT,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::morse::{GermComplex, GermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarannikovError {
    #[error("field characteristic must be 0 or a prime below 2^32, got {0}")]
    BadCharacteristic(u64),
    #[error("state is not a canonical diagram: {0}")]
    NotCanonical(String),
    #[error("reduction search exceeded {0} states")]
    StateLimit(usize),
    #[error(transparent)]
    Germ(#[from] GermError),
}

/// `Q` (characteristic 0) or `Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, BarannikovError> {
        if characteristic == 0 || (characteristic <= u32::MAX as u64 && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(BarannikovError::BadCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => f.write_str("Q"),
            p => write!(f, "Z/{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A generator `source` of index `k + 1` mapped onto `target` of index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    pub source: String,
    pub target: String,
    pub index: usize,
}

/// The pairing left by the canonical form: pairs sorted by descending source
/// value, unpaired generators by descending value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub pairs: Vec<Pair>,
    pub unpaired: Vec<String>,
}

impl CanonicalForm {
    pub fn partner(&self, id: &str) -> Option<&str> {
        self.pairs.iter().find_map(|p| {
            if p.source == id {
                Some(p.target.as_str())
            } else if p.target == id {
                Some(p.source.as_str())
            } else {
                None
            }
        })
    }
}

/// Column arithmetic over the chosen field.
enum Scalars {
    Prime(u64),
    Rational,
}

#[derive(Clone, Debug)]
enum Elem {
    Mod(u64),
    Q(BigRational),
}

impl Scalars {
    fn from_spec(field: FieldSpec) -> Self {
        match field.characteristic {
            0 => Scalars::Rational,
            p => Scalars::Prime(p),
        }
    }

    fn embed(&self, x: &BigInt) -> Elem {
        match self {
            Scalars::Prime(p) => Elem::Mod(
                x.mod_floor(&BigInt::from(*p))
                    .to_u64()
                    .expect("residue fits"),
            ),
            Scalars::Rational => Elem::Q(BigRational::from_integer(x.clone())),
        }
    }

    fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Mod(v) => *v == 0,
            Elem::Q(q) => q.is_zero(),
        }
    }

    /// `-a / b`
    fn neg_ratio(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Scalars::Prime(p), Elem::Mod(a), Elem::Mod(b)) => {
                let inv = mod_inverse(*b, *p);
                Elem::Mod((*p - (*a as u128 * inv as u128 % *p as u128) as u64) % *p)
            }
            (_, Elem::Q(a), Elem::Q(b)) => Elem::Q(-(a / b)),
            _ => unreachable!("mixed field elements"),
        }
    }

    /// `dst += c * src`
    fn axpy(&self, dst: &mut [Elem], c: &Elem, src: &[Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = match (self, &*d, c, s) {
                (Scalars::Prime(p), Elem::Mod(d), Elem::Mod(c), Elem::Mod(s)) => {
                    let p = *p as u128;
                    Elem::Mod(((*d as u128 + *c as u128 * *s as u128) % p) as u64)
                }
                (_, Elem::Q(d), Elem::Q(c), Elem::Q(s)) => Elem::Q(d + c * s),
                _ => unreachable!("mixed field elements"),
            };
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self {
            Scalars::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            Scalars::Rational => Elem::Q(BigRational::from_integer(rng.gen_range(-3..=3).into())),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (g, x, _) = crate::intmat::ext_gcd(&BigInt::from(a), &BigInt::from(p));
    debug_assert!(g == BigInt::from(1));
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// One boundary map over the field, with generators of both degrees listed
/// by ascending value. Columns are stored separately for cheap additions.
struct Reducer<'a> {
    scalars: &'a Scalars,
    columns: Vec<Vec<Elem>>,
}

impl Reducer<'_> {
    /// Highest-valued row with a nonzero entry.
    fn pivot(&self, j: usize) -> Option<usize> {
        self.columns[j]
            .iter()
            .rposition(|x| !self.scalars.is_zero(x))
    }

    /// Clears column `hi`'s pivot using column `lo` (which must be lower and
    /// share the pivot).
    fn eliminate(&mut self, hi: usize, lo: usize, row: usize) {
        let c = self
            .scalars
            .neg_ratio(&self.columns[hi][row], &self.columns[lo][row]);
        let src = self.columns[lo].clone();
        self.scalars.axpy(&mut self.columns[hi], &c, &src);
    }

    /// Standard left-to-right reduction.
    fn reduce_in_order(&mut self) {
        let mut owner: Vec<Option<usize>> = vec![None; self.rows()];
        for j in 0..self.columns.len() {
            while let Some(r) = self.pivot(j) {
                match owner[r] {
                    Some(lo) => self.eliminate(j, lo, r),
                    None => {
                        owner[r] = Some(j);
                        break;
                    }
                }
            }
        }
    }

    /// Repeatedly picks a random pair of columns sharing a pivot and clears
    /// the higher one, until pivots are distinct.
    fn reduce_randomly<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        loop {
            let mut conflicts = Vec::new();
            for hi in 0..self.columns.len() {
                if let Some(r) = self.pivot(hi) {
                    for lo in 0..hi {
                        if self.pivot(lo) == Some(r) {
                            conflicts.push((hi, lo, r));
                        }
                    }
                }
            }
            let Some(&(hi, lo, r)) = conflicts.choose(rng) else {
                return;
            };
            self.eliminate(hi, lo, r);
        }
    }

    fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

/// Pivot pairs `(row, col)` of the reduced boundary in one degree, both
/// positions in ascending-value order.
fn degree_pairs<R: Rng + ?Sized>(
    germ: &GermComplex,
    k: usize,
    scalars: &Scalars,
    rng: Option<&mut R>,
) -> Vec<(usize, usize)> {
    let rows = ascending(germ, k - 1);
    let cols = ascending(germ, k);
    let d = germ.boundary(k);
    let mut columns: Vec<Vec<Elem>> = cols
        .iter()
        .map(|&c| rows.iter().map(|&r| scalars.embed(&d[(r, c)])).collect())
        .collect();
    let mut reducer = Reducer {
        scalars,
        columns: Vec::new(),
    };
    match rng {
        None => {
            reducer.columns = columns;
            reducer.reduce_in_order();
        }
        Some(rng) => {
            // triangular changes of basis first: lower columns into higher
            // ones, higher rows into lower ones
            let (nr, nc) = (rows.len(), cols.len());
            for _ in 0..(nr + nc) {
                if nc >= 2 {
                    let hi = rng.gen_range(1..nc);
                    let lo = rng.gen_range(0..hi);
                    let c = scalars.random(rng);
                    let src = columns[lo].clone();
                    scalars.axpy(&mut columns[hi], &c, &src);
                }
                if nr >= 2 {
                    let hi = rng.gen_range(1..nr);
                    let lo = rng.gen_range(0..hi);
                    let c = scalars.random(rng);
                    for col in columns.iter_mut() {
                        let add = [col[hi].clone()];
                        scalars.axpy(&mut col[lo..=lo], &c, &add);
                    }
                }
            }
            reducer.columns = columns;
            reducer.reduce_randomly(rng);
        }
    }
    (0..reducer.columns.len())
        .filter_map(|j| reducer.pivot(j).map(|r| (rows[r], cols[j])))
        .collect()
}

/// Positions (in the natural order) of the degree-`k` generators, sorted by
/// ascending value.
fn ascending(germ: &GermComplex, k: usize) -> Vec<usize> {
    let gens = germ.natural_order(k);
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by(|&a, &b| gens[a].value.cmp(&gens[b].value));
    idx
}

fn assemble(
    germ: &GermComplex,
    mut rng: Option<&mut dyn rand::RngCore>,
    field: FieldSpec,
) -> CanonicalForm {
    let scalars = Scalars::from_spec(field);
    let mut pairs = Vec::new();
    let mut paired = std::collections::HashSet::new();
    for k in 1..=germ.n() {
        for (r, c) in degree_pairs(germ, k, &scalars, rng.as_deref_mut()) {
            let source = germ.generator(k, c).expect("in range");
            let target = germ.generator(k - 1, r).expect("in range");
            paired.insert(source.id.clone());
            paired.insert(target.id.clone());
            pairs.push((
                source.value.clone(),
                Pair {
                    source: source.id.clone(),
                    target: target.id.clone(),
                    index: k,
                },
            ));
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    let mut unpaired: Vec<_> = germ
        .points()
        .iter()
        .filter(|p| !paired.contains(&p.id))
        .collect();
    unpaired.sort_by(|a, b| b.value.cmp(&a.value));
    CanonicalForm {
        pairs: pairs.into_iter().map(|(_, p)| p).collect(),
        unpaired: unpaired.into_iter().map(|p| p.id.clone()).collect(),
    }
}

/// The canonical pairing of the germ's complex over `field`.
pub fn canonical_form(
    germ: &GermComplex,
    field: FieldSpec,
) -> Result<CanonicalForm, BarannikovError> {
    germ.ensure_valid()?;
    Ok(assemble(germ, None, field))
}

/// Same pairing computed after random triangular changes of basis and with
/// pivot conflicts resolved in random order.
pub fn canonical_form_randomized(
    germ: &GermComplex,
    field: FieldSpec,
    rng: &mut dyn rand::RngCore,
) -> Result<CanonicalForm, BarannikovError> {
    germ.ensure_valid()?;
    Ok(assemble(germ, Some(rng), field))
}
